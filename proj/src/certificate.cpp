#include <json.hpp>

#include "dci/dci.hpp"
#include "dci/error.hpp"

namespace dci {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json images(const Permutation& p) { return ordered_json(std::vector<Point>(p.images().begin(), p.images().end())); }

Permutation permutation_from(const ordered_json& j, const char* field) {
  try {
    return Permutation(j.get<std::vector<Point>>());
  } catch (const DomainError&) {
    throw ParseError(std::string("certificate: '") + field + "' is not a permutation");
  }
}

}  // namespace

std::string to_json(const DciCertificate& c) {
  ordered_json j;
  j["params"] = {{"k", c.params.k}, {"r", c.params.r}};
  j["degree"] = c.degree;
  j["generators"] = {{"tau1", images(c.tau1)}, {"tau2", images(c.tau2)}, {"rho1", images(c.rho1)},
                     {"rho2", images(c.rho2)}};
  ordered_json w;
  w["kind"] = c.witness_kind;
  w["colors"] = c.colors;
  if (c.witness_kind == "digraph" && c.s_sets.size() == 1 && c.t_sets.size() == 1) {
    w["S"] = c.s_sets.front();
    w["T"] = c.t_sets.front();
  } else {
    w["S"] = c.s_sets;
    w["T"] = c.t_sets;
  }
  w["iso"] = images(c.iso);
  j["witness"] = std::move(w);
  j["aut_count"] = c.aut_count;
  ordered_json checks = ordered_json::object();
  for (const auto& [name, ok] : c.checks) checks[name] = ok;
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

DciCertificate certificate_from_json(const std::string& text) {
  DciCertificate c;
  try {
    const auto j = ordered_json::parse(text);
    c.params.k = j.at("params").at("k").get<std::uint32_t>();
    c.params.r = j.at("params").at("r").get<std::uint32_t>();
    c.degree = j.at("degree").get<std::size_t>();
    const auto& g = j.at("generators");
    c.tau1 = permutation_from(g.at("tau1"), "tau1");
    c.tau2 = permutation_from(g.at("tau2"), "tau2");
    c.rho1 = permutation_from(g.at("rho1"), "rho1");
    c.rho2 = permutation_from(g.at("rho2"), "rho2");
    const auto& w = j.at("witness");
    c.witness_kind = w.at("kind").get<std::string>();
    c.colors = w.at("colors").get<std::vector<std::uint32_t>>();
    if (c.witness_kind == "digraph") {
      c.s_sets = {w.at("S").get<std::vector<Elem>>()};
      c.t_sets = {w.at("T").get<std::vector<Elem>>()};
    } else {
      c.s_sets = w.at("S").get<std::vector<std::vector<Elem>>>();
      c.t_sets = w.at("T").get<std::vector<std::vector<Elem>>>();
    }
    c.iso = permutation_from(w.at("iso"), "iso");
    c.aut_count = j.at("aut_count").get<std::uint64_t>();
    for (const auto& [name, ok] : j.at("checks").items()) c.checks.emplace_back(name, ok.get<bool>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate: ") + e.what());
  }
  return c;
}

}  // namespace dci
