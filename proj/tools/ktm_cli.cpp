// ktm: k-truss stability and minimization from the command line.
//
//   ktm stats FILE
//   ktm truss FILE -k K
//   ktm decompose FILE
//   ktm minimize FILE -k K -b B [--algorithm up_edge] [--format json|csv|human]
//   ktm bench FILE --k 5,10 --b 1,2,3 [--algorithms baseline,gp_edge,up_edge] [--reps N]
//
// Exit codes: 0 success (warnings included), 2 usage, 3 I/O or parse,
// 4 exact-cap refusal, 1 anything else.

#include <climits>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ktm/ktm.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitExactCap = 4;

int exit_code_for(ktm_status s) {
  switch (s) {
    case KTM_OK: return 0;
    case KTM_ERR_ARGUMENT: return kExitUsage;
    case KTM_ERR_IO:
    case KTM_ERR_PARSE: return kExitIo;
    case KTM_ERR_EXACT_CAP: return kExitExactCap;
    default: return 1;
  }
}

int report_failure(ktm_status s) {
  std::cerr << "ktm: " << ktm_status_name(s) << ": " << ktm_last_error() << "\n";
  return exit_code_for(s);
}

struct GraphDeleter {
  void operator()(ktm_graph* g) const { ktm_graph_free(g); }
};
struct EdgeListDeleter {
  void operator()(ktm_edge_list* l) const { ktm_edge_list_free(l); }
};
struct ReportDeleter {
  void operator()(ktm_report* r) const { ktm_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { ktm_string_free(s); }
};
using GraphPtr = std::unique_ptr<ktm_graph, GraphDeleter>;
using EdgeListPtr = std::unique_ptr<ktm_edge_list, EdgeListDeleter>;
using ReportPtr = std::unique_ptr<ktm_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

ktm_status load(const std::string& path, GraphPtr& out) {
  ktm_graph* g = nullptr;
  const ktm_status s = ktm_graph_load_file(path.c_str(), &g);
  out.reset(g);
  return s;
}

ktm_status parse_algorithms(const std::vector<std::string>& names, std::vector<ktm_algorithm>& out) {
  for (const auto& n : names) {
    ktm_algorithm a;
    if (ktm_status s = ktm_algorithm_from_name(n.c_str(), &a); s != KTM_OK) return s;
    out.push_back(a);
  }
  return KTM_OK;
}

void print_edges(const ktm_edge_list* list, bool with_value) {
  const size_t n = ktm_edge_list_size(list);
  for (size_t i = 0; i < n; ++i) {
    int64_t u = 0, v = 0;
    int32_t value = 0;
    ktm_edge_list_get(list, i, &u, &v, &value);
    if (with_value)
      std::printf("%lld %lld %d\n", static_cast<long long>(u), static_cast<long long>(v), value);
    else
      std::printf("%lld %lld\n", static_cast<long long>(u), static_cast<long long>(v));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-truss stability analysis and k-truss minimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ktm_version()));

  std::string input;
  int k = 0;
  int b = 1;
  std::string algorithm = "up_edge";
  std::string format = "human";
  unsigned threads = 0;
  bool full_rebuild = false;
  bool no_timing = false;
  std::string dump_groups;
  uint64_t exact_cap = 0;
  std::vector<int> bench_ks, bench_bs;
  std::vector<std::string> bench_algs{"baseline", "gp_edge", "up_edge"};
  int reps = 1;

  auto* stats = app.add_subcommand("stats", "Print n, m, triangle count, max support and max trussness");
  stats->add_option("input", input, "Edge-list file")->required();

  auto* truss = app.add_subcommand("truss", "Print the edges of the k-truss in original labels");
  truss->add_option("input", input, "Edge-list file")->required();
  truss->add_option("-k", k, "Truss level (>= 3)")->required()->check(CLI::Range(3, INT_MAX));

  auto* decompose = app.add_subcommand("decompose", "Print every edge with its trussness");
  decompose->add_option("input", input, "Edge-list file")->required();

  auto* minimize = app.add_subcommand("minimize", "Choose b edges whose deletion collapses the k-truss most");
  minimize->add_option("input", input, "Edge-list file")->required();
  minimize->add_option("-k", k, "Truss level (>= 3)")->required()->check(CLI::Range(3, INT_MAX));
  minimize->add_option("-b", b, "Edge budget (>= 1)")->check(CLI::Range(1, INT_MAX));
  minimize->add_option("-a,--algorithm", algorithm, "exact | support | baseline | gp_edge | up_edge")
      ->capture_default_str();
  minimize->add_option("-f,--format", format, "json | csv | human")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  minimize->add_option("-t,--threads", threads, "Worker threads for candidate evaluation (0 = all cores)");
  minimize->add_flag("--full-index-rebuild", full_rebuild, "up_edge: rebuild the truss-group index every iteration");
  minimize->add_flag("--no-timing", no_timing, "Omit wall-clock fields from the output");
  minimize->add_option("--dump-groups", dump_groups, "Write support/truss groups of T_k as JSON to this path");
  minimize->add_option("--exact-cap", exact_cap, "Maximum number of subsets the exact solver may enumerate");

  auto* bench = app.add_subcommand("bench", "Run a (k x b x algorithm x repetition) matrix and print CSV");
  bench->add_option("input", input, "Edge-list file")->required();
  bench->add_option("-k,--k", bench_ks, "Truss levels")->required()->delimiter(',')->check(CLI::Range(3, INT_MAX));
  bench->add_option("-b,--b", bench_bs, "Budgets")->required()->delimiter(',')->check(CLI::Range(1, INT_MAX));
  bench->add_option("-a,--algorithms", bench_algs, "Algorithms")->delimiter(',')->capture_default_str();
  bench->add_option("-r,--reps", reps, "Repetitions per cell")->check(CLI::Range(1, INT_MAX));
  bench->add_option("-t,--threads", threads, "Worker threads (0 = all cores)");
  bench->add_flag("--no-timing", no_timing, "Write 0 for every time_ms field");
  bench->add_option("--exact-cap", exact_cap, "Maximum number of subsets the exact solver may enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  GraphPtr graph;
  if (ktm_status s = load(input, graph); s != KTM_OK) return report_failure(s);

  if (app.got_subcommand(stats)) {
    ktm_stats st{};
    if (ktm_status s = ktm_graph_stats(graph.get(), &st); s != KTM_OK) return report_failure(s);
    std::printf("n=%llu\nm=%llu\ntriangles=%llu\nmax_support=%d\nmax_trussness=%d\n",
                static_cast<unsigned long long>(st.vertices), static_cast<unsigned long long>(st.edges),
                static_cast<unsigned long long>(st.triangles), st.max_support, st.max_trussness);
    return 0;
  }

  if (app.got_subcommand(truss) || app.got_subcommand(decompose)) {
    ktm_edge_list* raw = nullptr;
    const bool is_truss = app.got_subcommand(truss);
    ktm_status s = is_truss ? ktm_truss_edges(graph.get(), k, &raw) : ktm_decompose(graph.get(), &raw);
    EdgeListPtr list(raw);
    if (s != KTM_OK) return report_failure(s);
    print_edges(list.get(), !is_truss);
    return 0;
  }

  if (app.got_subcommand(minimize)) {
    ktm_solver_config cfg;
    ktm_solver_config_init(&cfg);
    cfg.k = k;
    cfg.b = b;
    cfg.threads = threads;
    cfg.full_index_rebuild = full_rebuild ? 1 : 0;
    if (exact_cap) cfg.exact_cap = exact_cap;
    if (ktm_status s = ktm_algorithm_from_name(algorithm.c_str(), &cfg.algorithm); s != KTM_OK)
      return report_failure(s);

    if (!dump_groups.empty()) {
      char* raw = nullptr;
      ktm_status s = ktm_groups_json(graph.get(), k, &raw);
      StringPtr text(raw);
      if (s != KTM_OK) return report_failure(s);
      std::ofstream out(dump_groups);
      if (!out) {
        std::cerr << "ktm: cannot write '" << dump_groups << "'\n";
        return kExitIo;
      }
      out << text.get();
    }

    ktm_report* raw = nullptr;
    ktm_status s = ktm_minimize(graph.get(), &cfg, &raw);
    ReportPtr report(raw);
    if (s != KTM_OK) return report_failure(s);

    if (format == "csv") {
      ktm_totals totals{};
      ktm_report_totals(report.get(), &totals);
      uint64_t evaluated = 0;
      double time_ms = 0.0;
      for (size_t i = 0; i < ktm_report_iteration_count(report.get()); ++i) {
        ktm_iteration it{};
        ktm_report_iteration(report.get(), i, &it);
        evaluated += it.candidates_evaluated;
        time_ms += it.time_ms;
      }
      std::printf("k,b,algorithm,rep,followers_total,time_ms,candidates_evaluated\n");
      std::printf("%d,%d,%s,0,%lld,%.3f,%llu\n", k, b, ktm_algorithm_name(cfg.algorithm),
                  static_cast<long long>(totals.followers_total), no_timing ? 0.0 : time_ms,
                  static_cast<unsigned long long>(evaluated));
    } else {
      char* text = nullptr;
      s = ktm_report_render(report.get(), format == "json" ? KTM_FORMAT_JSON : KTM_FORMAT_HUMAN,
                            no_timing ? 0 : 1, &text);
      StringPtr owned(text);
      if (s != KTM_OK) return report_failure(s);
      std::fputs(owned.get(), stdout);
    }
    for (size_t i = 0; const char* w = ktm_report_warning(report.get(), i); ++i)
      std::cerr << "ktm: warning: " << w << "\n";
    return 0;
  }

  if (app.got_subcommand(bench)) {
    std::vector<ktm_algorithm> algs;
    if (ktm_status s = parse_algorithms(bench_algs, algs); s != KTM_OK) return report_failure(s);
    char* raw = nullptr;
    ktm_status s = ktm_bench_csv(graph.get(), bench_ks.data(), bench_ks.size(), bench_bs.data(), bench_bs.size(),
                                 algs.data(), algs.size(), reps, threads, exact_cap, no_timing ? 0 : 1, &raw);
    StringPtr csv(raw);
    if (s != KTM_OK) return report_failure(s);
    std::fputs(csv.get(), stdout);
    return 0;
  }
  return kExitUsage;
}
