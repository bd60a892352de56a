#include "pwsparse/io.hpp"

#include <charconv>
#include <sstream>

namespace pwsparse {

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw NumericalError("number formatting failed");
  return std::string(buf, ptr);
}

nlohmann::json to_json(const CoherenceProfile& p) {
  nlohmann::json j;
  j["mu"] = p.mu;
  j["block_mu"] = p.block_mu;
  j["alpha"] = p.alpha;
  j["alpha_max"] = p.alpha_max;
  if (!p.babel.empty()) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [s, v] : p.babel) b[std::to_string(s)] = v;
    j["babel"] = b;
  }
  if (!p.cross_babel.empty()) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [key, v] : p.cross_babel) {
      const auto& [i, jj, m] = key;
      b[std::to_string(i) + "," + std::to_string(jj) + "," +
        std::to_string(m)] = v;
    }
    j["cross_babel"] = b;
  }
  if (!p.within_babel.empty()) {
    nlohmann::json b = nlohmann::json::object();
    for (const auto& [key, v] : p.within_babel)
      b[std::to_string(key.first) + "," + std::to_string(key.second)] = v;
    j["within_babel"] = b;
  }
  return j;
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json j;
  j["mu"] = r.mu;
  j["alpha"] = r.alpha;
  j["N"] = r.N;
  j["conditions"] = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json ej;
    ej["id"] = e.id;
    ej["kind"] = e.kind;
    ej["applicable"] = e.applicable;
    if (e.unbounded) ej["value"] = "unbounded";
    else if (e.value) ej["value"] = *e.value;
    if (e.satisfied) ej["satisfied"] = *e.satisfied;
    if (e.slack) ej["slack"] = *e.slack;
    if (!e.note.empty()) ej["note"] = e.note;
    j["conditions"].push_back(ej);
  }
  return j;
}

nlohmann::json to_json(const RecoveryResult& r) {
  nlohmann::json j;
  j["solver"] = r.solver;
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  j["support"] = r.support.global_support();
  nlohmann::json per_block = nlohmann::json::array();
  for (const auto& s : r.support.supports) per_block.push_back(s);
  j["support_per_block"] = per_block;
  j["residual_norm"] = r.residual_norm;
  j["iterations"] = r.iterations;
  j["objective"] = r.objective;
  j["converged"] = r.converged;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  if (r.certificate) {
    j["certificate"] = {
        {"dual_infnorm", r.certificate->dual_infnorm},
        {"duality_gap", r.certificate->duality_gap},
    };
  }
  if (!r.all_minimizers.empty()) j["all_minimizers"] = r.all_minimizers;
  return j;
}

BlockPartition partition_from_json(const nlohmann::json& j) {
  if (!j.contains("widths") || !j["widths"].is_array())
    throw UsageError("partition JSON needs a \"widths\" array");
  BlockPartition p;
  for (const auto& w : j["widths"]) p.widths.push_back(w.get<int>());
  p.validate();
  return p;
}

BlockPartition parse_widths(const std::string& comma_separated) {
  BlockPartition p;
  std::stringstream ss(comma_separated);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      p.widths.push_back(std::stoi(cell));
    } catch (const std::exception&) {
      throw UsageError("cannot parse width '" + cell + "'");
    }
  }
  p.validate();
  return p;
}

std::string bound_table_csv(const std::vector<BoundTableRow>& rows) {
  std::string out = "condition,param1,param2,value,satisfied\n";
  for (const auto& r : rows) {
    out += r.condition + "," + format_double(r.param1) + "," +
           format_double(r.param2) + "," + format_double(r.value) + ",";
    if (r.satisfied) out += *r.satisfied ? "1" : "0";
    out += "\n";
  }
  return out;
}

}  // namespace pwsparse
