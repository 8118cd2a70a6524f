#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpn/analysis.hpp"
#include "tpn/benchmark.hpp"
#include "tpn/export.hpp"
#include "tpn/parser.hpp"
#include "tpn/product.hpp"
#include "tpn/scg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeOut = 2;
constexpr int kExitTimeLock = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitPartial = 5;

int verdict_exit(const tpn::VerdictReport& rep) {
  switch (rep.verdict) {
    case tpn::Verdict::Success: return kExitOk;
    case tpn::Verdict::TimeOut: return kExitTimeOut;
    case tpn::Verdict::TimeLock: return kExitTimeLock;
    case tpn::Verdict::Inconclusive:
      return rep.complete ? kExitInconclusive : kExitPartial;
  }
  return kExitError;
}

struct InputOpts {
  std::string net_file;
  std::string manifest;
  // benchmark parameters; suppliers > 0 switches this mode on
  unsigned suppliers = 0;
  std::uint32_t managers = 1;
  std::int64_t y = 175;
  bool staggered = false;
  std::int64_t deadline = 210;

  void attach(CLI::App* cmd, bool benchmark_flags = true) {
    cmd->add_option("net", net_file, "net file to load");
    cmd->add_option("--manifest", manifest, "composition manifest to load");
    if (benchmark_flags) {
      cmd->add_option("--suppliers", suppliers, "generate the supply chain with this many suppliers");
      cmd->add_option("--managers", managers, "manager pool size (with --suppliers)");
      cmd->add_option("--y", y, "upper bound of the manager's grant window [2,y] (with --suppliers)");
      cmd->add_flag("--staggered", staggered, "delay the second supply order into [50,100]");
      cmd->add_option("--deadline", deadline, "watchdog deadline in days (with --suppliers)");
    }
  }

  bool benchmark() const { return suppliers > 0; }

  tpn::ChainConfig chain_config() const {
    tpn::ChainConfig cfg;
    cfg.suppliers = suppliers;
    cfg.managers = managers;
    cfg.grant_upper = tpn::Rat(y);
    cfg.staggered = staggered;
    cfg.deadline = tpn::Rat(deadline);
    return cfg;
  }

  // Loads or generates the net; composition warnings go to stderr.
  tpn::Ptpn load() const {
    int sources = (!net_file.empty()) + (!manifest.empty()) + benchmark();
    if (sources != 1)
      throw CLI::ValidationError("input", "need exactly one of: a net file, --manifest, --suppliers");
    if (benchmark()) return warn(tpn::build_chain(chain_config()));
    if (!manifest.empty()) {
      auto m = tpn::load_manifest_file(manifest);
      std::vector<tpn::SyncPolicy> policies;
      for (const auto& e : m.entries) policies.push_back(e.policy);
      return warn(tpn::chain_product(tpn::load_components(m), policies));
    }
    return tpn::load_net_file(net_file);
  }

  static tpn::Ptpn warn(tpn::ProductResult res) {
    for (const auto& d : res.dropped) {
      std::cerr << "warning: dropped unmatched '" << d.label << "' set from operand " << d.side
                << " {";
      for (std::size_t i = 0; i < d.transitions.size(); ++i)
        std::cerr << (i ? ", " : "") << d.transitions[i];
      std::cerr << "}; it can never fire\n";
    }
    return std::move(res.ptpn);
  }
};

struct LimitOpts {
  std::size_t max_classes = 0;  // 0 = unlimited
  double budget = 0.0;          // 0 = unlimited
  unsigned threads = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--limit-classes", max_classes, "stop exploring past this many classes");
    cmd->add_option("--budget-seconds", budget, "stop exploring after this much time");
    cmd->add_option("--threads", threads, "worker threads for the exploration");
  }

  tpn::BuildLimits limits() const {
    tpn::BuildLimits lim;
    if (max_classes > 0) lim.max_classes = max_classes;
    if (budget > 0) lim.budget_seconds = budget;
    lim.threads = threads;
    return lim;
  }
};

// "place" or "place>=k"
std::pair<std::string, std::uint32_t> parse_accepting(const std::string& s) {
  auto pos = s.find(">=");
  if (pos == std::string::npos) return {s, 1};
  return {s.substr(0, pos), static_cast<std::uint32_t>(std::stoul(s.substr(pos + 2)))};
}

void print_stats(const tpn::ScgStats& st, const tpn::BuildResult& built) {
  std::cout << "classes   " << st.classes << "\n"
            << "markings  " << st.markings << "\n"
            << "domains   " << st.domains << "\n"
            << "edges     " << st.edges << "\n"
            << "complete  " << (built.complete ? "yes" : "no") << "\n";
  std::cerr << "elapsed   " << built.seconds << "s\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int run(int argc, char** argv) {
  CLI::App app{"time Petri net composition and state-class analysis"};
  app.require_subcommand(1);

  // validate ---------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "parse and check net files");
  std::vector<std::string> validate_files;
  validate->add_option("files", validate_files, "net files")->required();

  // compose ----------------------------------------------------------------
  auto* compose = app.add_subcommand("compose", "compose the nets of a manifest");
  std::string compose_manifest, compose_out;
  compose->add_option("manifest", compose_manifest, "composition manifest")->required();
  compose->add_option("-o,--output", compose_out, "write the composed net here (default stdout)");

  // explore ----------------------------------------------------------------
  auto* explore = app.add_subcommand("explore", "build the state class graph and print statistics");
  InputOpts explore_in;
  LimitOpts explore_lim;
  explore_in.attach(explore);
  explore_lim.attach(explore);
  bool explore_json = false;
  explore->add_flag("--json", explore_json, "print the report as JSON");

  // check ------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "compute the verdict for a net or chain configuration");
  InputOpts check_in;
  LimitOpts check_lim;
  check_in.attach(check);
  check_lim.attach(check);
  std::string check_success = "SUCCESS", check_timeout = "TIMEOUT";
  std::vector<std::string> check_accepting;
  bool check_json = false;
  check->add_option("--success-label", check_success, "label announcing success");
  check->add_option("--timeout-label", check_timeout, "label announcing the deadline");
  check->add_option("--accepting", check_accepting,
                    "accepting marking constraint, place or place>=k (repeatable)");
  check->add_flag("--json", check_json, "print the report as JSON");

  // sweep ------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "verdicts across a range of grant upper bounds");
  unsigned sweep_suppliers = 2;
  std::uint32_t sweep_managers = 1;
  std::int64_t y_from = 0, y_to = 0, y_step = 1, sweep_deadline = 210;
  bool sweep_staggered = false;
  std::string sweep_out;
  LimitOpts sweep_lim;
  sweep->add_option("--suppliers", sweep_suppliers, "suppliers in the chain")->required();
  sweep->add_option("--managers", sweep_managers, "manager pool size");
  sweep->add_option("--y-from", y_from, "first grant upper bound")->required();
  sweep->add_option("--y-to", y_to, "last grant upper bound")->required();
  sweep->add_option("--y-step", y_step, "increment between bounds");
  sweep->add_flag("--staggered", sweep_staggered, "delay the second supply order into [50,100]");
  sweep->add_option("--deadline", sweep_deadline, "watchdog deadline in days");
  sweep->add_option("-o,--output", sweep_out, "write the CSV here (default stdout)");
  sweep_lim.attach(sweep);

  // export -----------------------------------------------------------------
  auto* exp = app.add_subcommand("export", "write the graph in exchange formats");
  InputOpts exp_in;
  LimitOpts exp_lim;
  exp_in.attach(exp);
  exp_lim.attach(exp);
  std::string exp_aut, exp_dot, exp_report, exp_net;
  exp->add_option("--aut", exp_aut, "Aldebaran transition system output path");
  exp->add_option("--dot", exp_dot, "Graphviz output path");
  exp->add_option("--report", exp_report, "JSON report output path");
  exp->add_option("--net-out", exp_net, "serialized composed net output path");

  // gen --------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "write the chain components and manifest");
  unsigned gen_suppliers = 2;
  std::uint32_t gen_managers = 1;
  std::int64_t gen_y = 175, gen_deadline = 210;
  bool gen_staggered = false;
  std::string gen_dir, gen_composed;
  gen->add_option("--suppliers", gen_suppliers, "suppliers in the chain")->required();
  gen->add_option("--managers", gen_managers, "manager pool size");
  gen->add_option("--y", gen_y, "upper bound of the manager's grant window");
  gen->add_flag("--staggered", gen_staggered, "delay the second supply order into [50,100]");
  gen->add_option("--deadline", gen_deadline, "watchdog deadline in days");
  gen->add_option("-o,--output", gen_dir, "directory for components and manifest")->required();
  gen->add_option("--composed", gen_composed, "also write the composed net here");

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) {
    bool ok = true;
    for (const auto& f : validate_files) {
      try {
        auto p = tpn::load_net_file(f);
        tpn::validate_ptpn(p);
        std::cout << f << ": ok (" << p.net.places.size() << " places, "
                  << p.net.transitions.size() << " transitions, " << p.relation.size()
                  << " firing sets)\n";
      } catch (const tpn::ParseError& e) {
        std::cout << (e.file.empty() ? f + ": " : "") << "error: " << e.what() << "\n";
        ok = false;
      } catch (const std::exception& e) {
        std::cout << f << ": error: " << e.what() << "\n";
        ok = false;
      }
    }
    return ok ? kExitOk : kExitError;
  }

  if (compose->parsed()) {
    auto m = tpn::load_manifest_file(compose_manifest);
    std::vector<tpn::SyncPolicy> policies;
    for (const auto& e : m.entries) policies.push_back(e.policy);
    auto p = InputOpts::warn(tpn::chain_product(tpn::load_components(m), policies));
    std::string text = tpn::serialize_net(p);
    if (compose_out.empty())
      std::cout << text;
    else
      write_file(compose_out, text);
    return kExitOk;
  }

  if (explore->parsed()) {
    auto p = explore_in.load();
    auto built = tpn::build_scg(p, explore_lim.limits());
    if (explore_json)
      std::cout << tpn::report_json(p, built, std::nullopt);
    else
      print_stats(tpn::scg_stats(built.graph), built);
    return built.complete ? kExitOk : kExitPartial;
  }

  if (check->parsed()) {
    auto p = check_in.load();
    tpn::AcceptanceSpec spec;
    if (check_in.benchmark()) {
      spec = tpn::chain_acceptance();
    } else {
      spec.success_label = check_success;
      spec.timeout_label = check_timeout;
      for (const auto& a : check_accepting) spec.accepting_at_least.push_back(parse_accepting(a));
    }
    auto built = tpn::build_scg(p, check_lim.limits());
    auto rep = tpn::verdict_of(p, built, spec);
    if (check_json) {
      std::cout << tpn::report_json(p, built, rep);
    } else {
      std::cout << "verdict   " << tpn::to_string(rep.verdict) << "\n"
                << "detail    " << rep.detail << "\n";
      print_stats(tpn::scg_stats(built.graph), built);
      if (!rep.path.empty()) {
        std::cout << "witness  ";
        for (auto c : rep.path) std::cout << " " << c;
        std::cout << "\n";
      }
    }
    return verdict_exit(rep);
  }

  if (sweep->parsed()) {
    if (y_step <= 0) throw CLI::ValidationError("--y-step", "must be positive");
    std::ostringstream csv;
    csv << "suppliers,managers,y,staggered,deadline,verdict,classes,markings,domains,edges,complete\n";
    for (std::int64_t y = y_from; y <= y_to; y += y_step) {
      tpn::ChainConfig cfg;
      cfg.suppliers = sweep_suppliers;
      cfg.managers = sweep_managers;
      cfg.grant_upper = tpn::Rat(y);
      cfg.staggered = sweep_staggered;
      cfg.deadline = tpn::Rat(sweep_deadline);
      auto p = InputOpts::warn(tpn::build_chain(cfg));
      auto built = tpn::build_scg(p, sweep_lim.limits());
      auto rep = tpn::verdict_of(p, built, tpn::chain_acceptance());
      auto st = tpn::scg_stats(built.graph);
      csv << sweep_suppliers << "," << sweep_managers << "," << y << ","
          << (sweep_staggered ? 1 : 0) << "," << sweep_deadline << ","
          << tpn::to_string(rep.verdict) << "," << st.classes << "," << st.markings << ","
          << st.domains << "," << st.edges << "," << (built.complete ? 1 : 0) << "\n";
    }
    if (sweep_out.empty())
      std::cout << csv.str();
    else
      write_file(sweep_out, csv.str());
    return kExitOk;
  }

  if (exp->parsed()) {
    auto p = exp_in.load();
    if (exp_aut.empty() && exp_dot.empty() && exp_report.empty() && exp_net.empty())
      throw CLI::ValidationError("export", "nothing to write: pass --aut, --dot, --report or --net-out");
    if (!exp_net.empty()) write_file(exp_net, tpn::serialize_net(p));
    if (!exp_aut.empty() || !exp_dot.empty() || !exp_report.empty()) {
      auto built = tpn::build_scg(p, exp_lim.limits());
      if (!exp_aut.empty()) write_file(exp_aut, tpn::to_aut(p, built.graph));
      if (!exp_dot.empty()) write_file(exp_dot, tpn::to_dot(p, built.graph, built.expanded));
      if (!exp_report.empty()) {
        std::optional<tpn::VerdictReport> rep;
        if (exp_in.benchmark()) rep = tpn::verdict_of(p, built, tpn::chain_acceptance());
        write_file(exp_report, tpn::report_json(p, built, rep));
      }
    }
    return kExitOk;
  }

  if (gen->parsed()) {
    tpn::ChainConfig cfg;
    cfg.suppliers = gen_suppliers;
    cfg.managers = gen_managers;
    cfg.grant_upper = tpn::Rat(gen_y);
    cfg.staggered = gen_staggered;
    cfg.deadline = tpn::Rat(gen_deadline);
    tpn::write_chain(cfg, gen_dir);
    std::cout << "wrote " << (cfg.suppliers + 3) << " components and chain.manifest to " << gen_dir
              << "\n";
    if (!gen_composed.empty())
      write_file(gen_composed, tpn::serialize_net(InputOpts::warn(tpn::build_chain(cfg))));
    return kExitOk;
  }

  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tpn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const tpn::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
  } catch (const tpn::IntervalError& e) {
    std::cerr << "interval error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
