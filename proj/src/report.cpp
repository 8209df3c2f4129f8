#include "rcpkit/report.hpp"

#include "rcpkit/io.hpp"

#include <cmath>

namespace rcpkit {

namespace {

nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json opt(const std::optional<double>& v) { return v ? num(*v) : nlohmann::json(nullptr); }

nlohmann::json vec(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

}  // namespace

nlohmann::json to_json(const Support& s) {
  nlohmann::json a = nlohmann::json::array();
  for (Index i : s) a.push_back(i);
  return a;
}

nlohmann::json to_json(const GramSpectrum& s) {
  nlohmann::json v = nlohmann::json::array();
  for (Index i = 0; i < s.eigenvectors.rows(); ++i)
    for (Index j = 0; j < s.eigenvectors.cols(); ++j) v.push_back(num(s.eigenvectors(i, j)));
  return {{"eigenvalues", vec(s.eigenvalues)}, {"eigenvectors_row_major", v}, {"sweeps", s.sweeps}};
}

nlohmann::json to_json(const RicResult& r) {
  nlohmann::json j = {{"K", r.K},
                      {"delta", num(r.delta)},
                      {"mode", to_string(r.mode)},
                      {"witness", to_json(r.witness)},
                      {"lambda_min", num(r.lambda_min)},
                      {"lambda_max", num(r.lambda_max)},
                      {"supports_examined", r.supports_examined},
                      {"lower_bound", r.is_lower_bound()}};
  if (r.mode == RicMode::monte_carlo) j["trials"] = r.trials;
  return j;
}

nlohmann::json to_json(const RocResult& r) {
  return {{"K", r.K},           {"K_prime", r.K_prime},         {"theta", num(r.theta)},
          {"I", to_json(r.I)},  {"I_prime", to_json(r.I_prime)}, {"pairs_examined", r.pairs_examined}};
}

nlohmann::json to_json(const PairGeometry& g) {
  return {{"xi", num(g.xi)},
          {"cos_alpha", num(g.cos_alpha)},
          {"cos_beta", num(g.cos_beta)},
          {"delta_u", num(g.delta_u)},
          {"delta_v", num(g.delta_v)},
          {"delta_max", num(g.delta_max)},
          {"support_u", to_json(g.support_u)},
          {"support_v", to_json(g.support_v)}};
}

nlohmann::json to_json(const BoundInterval& b) {
  const BoundConstants& c = b.constants;
  nlohmann::json k = nlohmann::json::object();
  auto put = [&](const char* name, const std::optional<double>& v) {
    if (v) k[name] = num(*v);
  };
  put("epsilon", c.epsilon);
  put("delta_max", c.delta_max);
  put("delta_k", c.delta_k);
  put("xi", c.xi);
  put("cos_alpha", c.cos_alpha);
  put("lambda_min", c.lambda_min);
  put("lambda_max", c.lambda_max);
  put("delta_u", c.delta_u);
  put("delta_v", c.delta_v);
  return {{"kind", to_string(b.kind)}, {"lower", num(b.lower)}, {"upper", num(b.upper)}, {"constants", k}};
}

nlohmann::json to_json(const OrthantRatio& r) {
  return {{"ratio", num(r.ratio)},         {"bound", num(r.bound)},
          {"cos_alpha", num(r.cos_alpha)}, {"cos_theta", num(r.cos_theta)},
          {"cos_gamma", opt(r.cos_gamma)}, {"within", r.within},
          {"chain_holds", r.chain_holds}};
}

nlohmann::json to_json(const MinusTermReport& r) {
  return {{"k1", r.k1},
          {"k2", r.k2},
          {"sum_A", num(r.sum_A)},
          {"sum_B", num(r.sum_B)},
          {"neg_count_A", r.neg_count_A},
          {"neg_count_B", r.neg_count_B},
          {"condition_A", r.condition_A},
          {"condition_B", r.condition_B},
          {"conclusion_holds", r.conclusion_holds()},
          {"sandwich_same_sign_holds", r.sandwich_same_sign},
          {"implication_ok", r.implication_ok}};
}

nlohmann::json to_json(const TestOutcome& t) {
  return {{"statistic", num(t.statistic)},
          {"critical_value", num(t.critical_value)},
          {"significance", t.significance},
          {"pass", t.pass},
          {"sample_size", t.sample_size}};
}

nlohmann::json to_json(const TailProbs& t) { return {{"p_upper", num(t.p_upper)}, {"p_lower", num(t.p_lower)}}; }

nlohmann::json campaign_summary(const EigenCampaign& c, const CampaignTests& tests) {
  double mean = 0.0;
  for (double v : c.transformed) mean += v;
  mean /= static_cast<double>(c.transformed.size());
  double var = 0.0;
  for (double v : c.transformed) var += (v - mean) * (v - mean);
  var /= static_cast<double>(c.transformed.size() - (c.transformed.size() > 1 ? 1 : 0));
  nlohmann::json j = {{"M", c.M},
                      {"N", c.N},
                      {"supp_size", c.supp_size},
                      {"trials", c.trials},
                      {"seed", c.seed},
                      {"sample_count", c.samples.size()},
                      {"transformed_mean", num(mean)},
                      {"transformed_variance", num(var)},
                      {"max_trace_gap", num(c.max_trace_gap)},
                      {"ks", to_json(tests.ks)},
                      {"jb", tests.jb ? to_json(*tests.jb) : nlohmann::json(nullptr)}};
  if (tests.per_trial_tests > 0)
    j["per_trial_ks"] = {{"tests", tests.per_trial_tests},
                         {"passes", tests.per_trial_passes},
                         {"pass_rate", static_cast<double>(tests.per_trial_passes) / tests.per_trial_tests}};
  return j;
}

namespace {

std::string opt_lower(const std::optional<BoundInterval>& b) {
  return b ? format_double(b->lower) : std::string(missing_value);
}
std::string opt_upper(const std::optional<BoundInterval>& b) {
  return b ? format_double(b->upper) : std::string(missing_value);
}

}  // namespace

std::string rcp_table_csv(const std::vector<RcpRow>& rows) {
  std::string out =
      "index,xi,cos_alpha,cos_beta,jl_lower,jl_upper,ip_lower,ip_upper,sandwich_holds,epsilon,delta_u,delta_v,"
      "delta_joint,jl_rigorous_lower,jl_rigorous_upper,support_mode\n";
  const std::string na(missing_value);
  for (const RcpRow& r : rows) {
    out += std::to_string(r.index);
    if (!r.geometry) {
      for (int i = 0; i < 14; ++i) out += "," + na;
      out += ",";
      out += to_string(r.support_mode);
      out += '\n';
      continue;
    }
    const PairGeometry& g = *r.geometry;
    for (double v : {g.xi, g.cos_alpha, g.cos_beta}) out += "," + format_double(v);
    out += "," + opt_lower(r.jl) + "," + opt_upper(r.jl);
    out += "," + opt_lower(r.ip) + "," + opt_upper(r.ip);
    out += r.sandwich_holds ? ",1" : ",0";
    out += "," + format_optional(r.epsilon);
    for (double v : {g.delta_u, g.delta_v, r.delta_joint}) out += "," + format_double(v);
    out += "," + opt_lower(r.jl_rigorous) + "," + opt_upper(r.jl_rigorous);
    out += ",";
    out += to_string(r.support_mode);
    out += '\n';
  }
  return out;
}

std::string curves_csv(const std::vector<CurveSeries>& series) {
  std::size_t rows = 0;
  for (const CurveSeries& s : series) rows = std::max(rows, s.values.size());
  std::string out = "column";
  for (const CurveSeries& s : series) {
    out += ',';
    out += to_string(s.label);
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out += std::to_string(i);
    for (const CurveSeries& s : series) {
      out += ',';
      out += i < s.values.size() ? format_optional(s.values[i]) : std::string(missing_value);
    }
    out += '\n';
  }
  return out;
}

std::string pass_rate_csv(const std::vector<PassRateCell>& cells) {
  std::string out = "M,supp_size,pass_rate,N,tests,passes\n";
  for (const PassRateCell& c : cells)
    out += std::to_string(c.M) + "," + std::to_string(c.supp_size) + "," + format_double(c.rate()) + "," +
           std::to_string(c.N) + "," + std::to_string(c.tests) + "," + std::to_string(c.passes) + "\n";
  return out;
}

}  // namespace rcpkit
