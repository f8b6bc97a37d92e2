#include "ktm/ktm.h"

#include <cstring>
#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "ktm/error.hpp"
#include "ktm/groups.hpp"
#include "ktm/minimize.hpp"
#include "ktm/report.hpp"
#include "ktm/truss.hpp"

struct ktm_graph {
  ktm::Graph graph;
};

struct ktm_edge_list {
  struct Row {
    int64_t u, v;
    int32_t value;
  };
  std::vector<Row> rows;
};

struct ktm_report {
  ktm::MinimizationReport report;
};

namespace {

thread_local std::string last_error;

ktm_status fail(ktm_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs f, translating library exceptions into status codes.
template <class F>
ktm_status guarded(F&& f) noexcept {
  try {
    last_error.clear();
    return f();
  } catch (const ktm::ParseError& e) {
    return fail(KTM_ERR_PARSE, e.what());
  } catch (const ktm::IoError& e) {
    return fail(KTM_ERR_IO, e.what());
  } catch (const ktm::ArgumentError& e) {
    return fail(KTM_ERR_ARGUMENT, e.what());
  } catch (const ktm::ExactCapExceeded& e) {
    return fail(KTM_ERR_EXACT_CAP, e.what());
  } catch (const ktm::EmptyTruss& e) {
    return fail(KTM_ERR_EMPTY_TRUSS, e.what());
  } catch (const ktm::ContractViolation& e) {
    return fail(KTM_ERR_CONTRACT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KTM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KTM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KTM_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ktm::Algorithm to_cpp(ktm_algorithm a) {
  switch (a) {
    case KTM_ALG_EXACT: return ktm::Algorithm::exact;
    case KTM_ALG_SUPPORT: return ktm::Algorithm::support;
    case KTM_ALG_BASELINE: return ktm::Algorithm::baseline;
    case KTM_ALG_GP_EDGE: return ktm::Algorithm::gp_edge;
    case KTM_ALG_UP_EDGE: return ktm::Algorithm::up_edge;
  }
  throw ktm::ArgumentError("unknown algorithm id " + std::to_string(static_cast<int>(a)));
}

#define KTM_REQUIRE(ptr)                                                  \
  do {                                                                    \
    if (!(ptr)) return fail(KTM_ERR_ARGUMENT, #ptr " must not be null");  \
  } while (0)

}  // namespace

extern "C" {

const char* ktm_version(void) { return "1.0.0"; }

const char* ktm_last_error(void) { return last_error.c_str(); }

const char* ktm_status_name(ktm_status status) {
  switch (status) {
    case KTM_OK: return "ok";
    case KTM_ERR_ARGUMENT: return "argument error";
    case KTM_ERR_IO: return "I/O error";
    case KTM_ERR_PARSE: return "parse error";
    case KTM_ERR_CONTRACT: return "contract violation";
    case KTM_ERR_EXACT_CAP: return "exact enumeration cap exceeded";
    case KTM_ERR_EMPTY_TRUSS: return "empty truss";
    case KTM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ktm_string_free(char* s) { delete[] s; }

ktm_status ktm_algorithm_from_name(const char* name, ktm_algorithm* out) {
  KTM_REQUIRE(name);
  KTM_REQUIRE(out);
  return guarded([&] {
    *out = static_cast<ktm_algorithm>(static_cast<int>(ktm::parse_algorithm(name)));
    return KTM_OK;
  });
}

const char* ktm_algorithm_name(ktm_algorithm alg) {
  try {
    return ktm::to_string(to_cpp(alg)).data();
  } catch (...) {
    return "unknown";
  }
}

void ktm_solver_config_init(ktm_solver_config* cfg) {
  if (!cfg) return;
  cfg->k = 3;
  cfg->b = 1;
  cfg->algorithm = KTM_ALG_UP_EDGE;
  cfg->threads = 0;
  cfg->full_index_rebuild = 0;
  cfg->exact_cap = ktm::kDefaultExactCap;
}

ktm_status ktm_graph_load_file(const char* path, ktm_graph** out) {
  KTM_REQUIRE(path);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new ktm_graph{ktm::load_edge_list_file(path)};
    return KTM_OK;
  });
}

ktm_status ktm_graph_load_text(const char* text, size_t length, ktm_graph** out) {
  KTM_REQUIRE(out);
  *out = nullptr;
  if (!text && length) return fail(KTM_ERR_ARGUMENT, "text must not be null");
  return guarded([&] {
    std::istringstream in(std::string(text ? text : "", length));
    *out = new ktm_graph{ktm::load_edge_list(in)};
    return KTM_OK;
  });
}

void ktm_graph_free(ktm_graph* g) { delete g; }

uint64_t ktm_graph_vertex_count(const ktm_graph* g) { return g ? g->graph.vertex_count() : 0; }
uint64_t ktm_graph_edge_count(const ktm_graph* g) { return g ? g->graph.edge_count() : 0; }

ktm_status ktm_graph_stats(const ktm_graph* g, ktm_stats* out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(out);
  return guarded([&] {
    const auto& graph = g->graph;
    const auto sup = ktm::compute_supports(graph, ktm::EdgeMask(graph.edge_count(), true));
    out->vertices = graph.vertex_count();
    out->edges = graph.edge_count();
    out->triangles = ktm::count_triangles(graph);
    out->max_support = 0;
    for (int s : sup) out->max_support = std::max(out->max_support, s);
    out->max_trussness = graph.edge_count() ? ktm::truss_decompose(graph).max() : 0;
    return KTM_OK;
  });
}

ktm_status ktm_truss_edges(const ktm_graph* g, int32_t k, ktm_edge_list** out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& graph = g->graph;
    const auto t = ktm::k_truss(graph, k);
    auto list = std::make_unique<ktm_edge_list>();
    t.alive.for_each([&](std::size_t e) {
      const auto& key = graph.edge(static_cast<ktm::EdgeId>(e));
      list->rows.push_back({graph.label(key.u), graph.label(key.v), t.support[e]});
    });
    *out = list.release();
    return KTM_OK;
  });
}

ktm_status ktm_decompose(const ktm_graph* g, ktm_edge_list** out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& graph = g->graph;
    const auto tau = ktm::truss_decompose(graph);
    auto list = std::make_unique<ktm_edge_list>();
    for (ktm::EdgeId e = 0; e < graph.edge_count(); ++e) {
      const auto& key = graph.edge(e);
      list->rows.push_back({graph.label(key.u), graph.label(key.v), tau[e]});
    }
    *out = list.release();
    return KTM_OK;
  });
}

size_t ktm_edge_list_size(const ktm_edge_list* list) { return list ? list->rows.size() : 0; }

ktm_status ktm_edge_list_get(const ktm_edge_list* list, size_t i, int64_t* u, int64_t* v, int32_t* value) {
  KTM_REQUIRE(list);
  if (i >= list->rows.size()) return fail(KTM_ERR_ARGUMENT, "edge list index out of range");
  const auto& row = list->rows[i];
  if (u) *u = row.u;
  if (v) *v = row.v;
  if (value) *value = row.value;
  return KTM_OK;
}

void ktm_edge_list_free(ktm_edge_list* list) { delete list; }

ktm_status ktm_minimize(const ktm_graph* g, const ktm_solver_config* cfg, ktm_report** out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(cfg);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    ktm::SolverConfig c;
    c.k = cfg->k;
    c.b = cfg->b;
    c.algorithm = to_cpp(cfg->algorithm);
    c.threads = cfg->threads;
    c.full_index_rebuild = cfg->full_index_rebuild != 0;
    c.exact_cap = cfg->exact_cap ? cfg->exact_cap : ktm::kDefaultExactCap;
    *out = new ktm_report{ktm::solve(g->graph, c)};
    return KTM_OK;
  });
}

void ktm_report_free(ktm_report* r) { delete r; }

size_t ktm_report_iteration_count(const ktm_report* r) { return r ? r->report.iterations.size() : 0; }

ktm_status ktm_report_iteration(const ktm_report* r, size_t i, ktm_iteration* out) {
  KTM_REQUIRE(r);
  KTM_REQUIRE(out);
  if (i >= r->report.iterations.size()) return fail(KTM_ERR_ARGUMENT, "iteration index out of range");
  const auto& it = r->report.iterations[i];
  *out = ktm_iteration{it.u, it.v, it.followers, it.candidates_total, it.candidates_evaluated, it.time_ms};
  return KTM_OK;
}

ktm_status ktm_report_totals(const ktm_report* r, ktm_totals* out) {
  KTM_REQUIRE(r);
  KTM_REQUIRE(out);
  const auto& rep = r->report;
  *out = ktm_totals{rep.followers_total, rep.b_effective, rep.initial_truss_edges, rep.final_truss_edges,
                    static_cast<uint32_t>(rep.warnings.size())};
  return KTM_OK;
}

const char* ktm_report_warning(const ktm_report* r, size_t i) {
  if (!r || i >= r->report.warnings.size()) return nullptr;
  return r->report.warnings[i].c_str();
}

ktm_status ktm_report_render(const ktm_report* r, ktm_format format, int include_timing, char** out) {
  KTM_REQUIRE(r);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    switch (format) {
      case KTM_FORMAT_JSON: *out = copy_string(ktm::report_to_json(r->report, include_timing != 0)); break;
      case KTM_FORMAT_HUMAN: *out = copy_string(ktm::report_to_human(r->report)); break;
      default: return fail(KTM_ERR_ARGUMENT, "reports render as json or human");
    }
    return KTM_OK;
  });
}

ktm_status ktm_groups_json(const ktm_graph* g, int32_t k, char** out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const auto& graph = g->graph;
    const auto t = ktm::k_truss(graph, k);
    const auto scan = ktm::find_support_groups(t);
    const auto tau = ktm::truss_decompose(graph);
    const auto index = ktm::build_truss_group_index(graph, tau, k);
    *out = copy_string(ktm::groups_to_json(graph, scan, index));
    return KTM_OK;
  });
}

ktm_status ktm_bench_csv(const ktm_graph* g, const int32_t* ks, size_t k_count, const int32_t* bs, size_t b_count,
                         const ktm_algorithm* algorithms, size_t algorithm_count, int32_t repetitions,
                         uint32_t threads, uint64_t exact_cap, int include_timing, char** out) {
  KTM_REQUIRE(g);
  KTM_REQUIRE(out);
  *out = nullptr;
  if ((k_count && !ks) || (b_count && !bs) || (algorithm_count && !algorithms))
    return fail(KTM_ERR_ARGUMENT, "matrix axis pointer must not be null");
  return guarded([&] {
    ktm::BenchMatrix m;
    m.ks.assign(ks, ks + k_count);
    m.bs.assign(bs, bs + b_count);
    for (size_t i = 0; i < algorithm_count; ++i) m.algorithms.push_back(to_cpp(algorithms[i]));
    m.repetitions = repetitions;
    const auto rows = ktm::run_bench(g->graph, m, threads, exact_cap ? exact_cap : ktm::kDefaultExactCap);
    *out = copy_string(ktm::bench_to_csv(rows, include_timing != 0));
    return KTM_OK;
  });
}

}  // extern "C"
