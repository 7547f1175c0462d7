#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dci/construction.hpp"
#include "dci/dci.hpp"
#include "dci/error.hpp"
#include "dci/orbital.hpp"
#include "dci/perm_io.hpp"

namespace dci::cli {

namespace {

struct CommandConfig {
  std::uint32_t k = 1;
  std::uint32_t r = 1;
  std::string out_path;
  std::string in_path;
  std::string group_name;
  std::string format = "dot";
  std::uint64_t seed = 0;
  int jobs = 0;
  std::uint64_t node_cap = SearchBudget{}.node_cap;
  std::uint64_t element_cap = kDefaultElementCap;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

RefutationOptions options(const CommandConfig& cfg) {
  RefutationOptions opt;
  opt.seed = cfg.seed;
  opt.budget.node_cap = cfg.node_cap;
  opt.element_cap = cfg.element_cap;
  return opt;
}

int cmd_refute(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate({cfg.k, cfg.r}, kPipelineDegreeCeiling);
  } catch (const DomainError& e) {
    err << "refute: " << e.what() << '\n';
    return kUsage;
  }
  const auto cert = babai_refutation({cfg.k, cfg.r}, options(cfg));
  const auto outcome = verify_certificate(cert);
  if (!outcome.ok) {
    err << "refute: certificate failed verification at " << outcome.failed_check << '\n';
    return kPipelineFailure;
  }
  write_output(cfg.out_path, to_json(cert), out);
  return kOk;
}

int cmd_verify(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto cert = certificate_from_json(read_file(cfg.in_path));
  const auto outcome = verify_certificate(cert);
  if (!outcome.ok) {
    for (const auto& line : outcome.log) err << line << '\n';
    err << "verify: failed check " << outcome.failed_check << '\n';
    return kRefutedOrCheckFailed;
  }
  out << "certificate verified: k=" << cert.params.k << " r=" << cert.params.r << " witness=" << cert.witness_kind
      << " aut_count=" << cert.aut_count << '\n';
  return kOk;
}

int cmd_two_closure(const CommandConfig& cfg, std::ostream& out, std::ostream&) {
  std::istringstream text(read_file(cfg.in_path));
  const auto gens = parse_generators(text);
  const PermGroup g(gens.degree, gens.generators, cfg.seed);
  const PermGroup closure = two_closure(g, {cfg.node_cap});
  out << "order " << g.order() << '\n';
  out << "closure_order " << closure.order() << '\n';
  out << "two_closed " << (same_group(g, closure) ? "yes" : "no") << '\n';
  write_generators(out, closure.degree(), closure.generators());
  return kOk;
}

int cmd_brute_dci(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto group = group_by_name(cfg.group_name);
  if (!group) {
    err << "brute-dci: unknown group '" << cfg.group_name << "'\n";
    return kUsage;
  }
  if (group->order() > kBruteDegreeCeiling) {
    err << "brute-dci: order " << group->order() << " is above the oracle ceiling of " << kBruteDegreeCeiling
        << '\n';
    return kUsage;
  }
  const auto violations = dci_brute(*group);
  if (violations.empty()) {
    out << "DCI confirmed\n";
    return kOk;
  }
  for (const auto& v : violations) {
    out << "S = {";
    for (std::size_t t = 0; t < v.s.size(); ++t) out << (t ? ", " : "") << v.s[t];
    out << "}  T = {";
    for (std::size_t t = 0; t < v.t.size(); ++t) out << (t ? ", " : "") << v.t[t];
    out << "}\n";
  }
  out << violations.size() << " violating pair(s): not DCI\n";
  return kRefutedOrCheckFailed;
}

int cmd_export(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto cert = certificate_from_json(read_file(cfg.in_path));
  if (cert.witness_kind != "digraph") {
    err << "export-dot: certificate carries a colored witness; no single digraph to export\n";
    return kUnsupportedExport;
  }
  std::ostringstream text;
  const ArcSet arcs = witness_arcs(cert);
  if (cfg.format == "adj") {
    write_adjacency(text, arcs);
  } else {
    write_dot(text, arcs, std::make_pair(cert.params.k, cert.params.r));
  }
  write_output(cfg.out_path, text.str(), out);
  return kOk;
}

int cmd_bundle(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate({cfg.k, cfg.r});
  } catch (const DomainError& e) {
    err << "bundle: " << e.what() << '\n';
    return kUsage;
  }
  std::ostringstream text;
  write_bundle(text, build({cfg.k, cfg.r}, cfg.seed));
  write_output(cfg.out_path, text.str(), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  CLI::App app{"Two-closure and DCI refutation toolkit for A x| C_8"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "seed for randomized Schreier-Sims sampling");
  app.add_option("--jobs", cfg.jobs, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--node-cap", cfg.node_cap, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--element-cap", cfg.element_cap, "element enumeration cap")->check(CLI::PositiveNumber);

  auto* refute = app.add_subcommand("refute", "run the pipeline and write a certificate");
  refute->add_option("--k", cfg.k, "odd k")->required();
  refute->add_option("--r", cfg.r, "1 or 3")->required();
  refute->add_option("--out", cfg.out_path, "certificate path (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "re-check a certificate from scratch");
  verify->add_option("certificate", cfg.in_path)->required();

  auto* closure = app.add_subcommand("two-closure", "2-closure of a group given by generators");
  closure->add_option("generators", cfg.in_path)->required();

  auto* brute = app.add_subcommand("brute-dci", "exhaustive DCI test of a group of order <= 8");
  brute->add_option("group", cfg.group_name, "e.g. c8, c2xc4, q8")->required();

  auto* exporter = app.add_subcommand("export-dot", "export the witness digraph of a certificate");
  exporter->add_option("certificate", cfg.in_path)->required();
  exporter->add_option("--out", cfg.out_path, "output path (stdout if omitted)");
  exporter->add_option("--format", cfg.format, "dot or adj")->check(CLI::IsMember({"dot", "adj"}));

  auto* bundle = app.add_subcommand("bundle", "write tau1, tau2, rho1, rho2, h as generators");
  bundle->add_option("--k", cfg.k, "odd k")->required();
  bundle->add_option("--r", cfg.r, "1 or 3")->required();
  bundle->add_option("--out", cfg.out_path, "output path (stdout if omitted)");

  for (auto* sub : {refute, verify, closure, brute, exporter, bundle}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);

  try {
    if (*refute) return cmd_refute(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*closure) return cmd_two_closure(cfg, out, err);
    if (*brute) return cmd_brute_dci(cfg, out, err);
    if (*exporter) return cmd_export(cfg, out, err);
    if (*bundle) return cmd_bundle(cfg, out, err);
  } catch (const IoError& e) {
    err << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kData;
  } catch (const CapacityError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const VerificationError& e) {
    err << "pipeline failed at " << e.check() << ": " << e.what() << '\n';
    return kPipelineFailure;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace dci::cli
