#include "guesswork/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include "guesswork/error.hpp"
#include "guesswork/guessing.hpp"
#include "guesswork/leakage.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/strategy.hpp"

namespace guesswork::cli {

using nlohmann::json;

namespace {

constexpr double kVerifyRelative = 1e-6;
constexpr double kVerifyCoverage = 1e-4;

std::vector<std::string> read_labels(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<std::string>>();
}

std::string format_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

std::string alpha_token(Alpha alpha, int precision) {
  if (!alpha.is_generic()) return alpha.to_string();
  return format_double(alpha.value(), precision);
}

json coverage_json(const Pmf& pmf, const CoverageVector& cov) {
  json arr = json::array();
  for (std::size_t i = 0; i < cov.t.size(); ++i) {
    arr.push_back({{"symbol", pmf.label(i)}, {"t", cov.t[i]}});
  }
  return arr;
}

json mixture_json(const Pmf& pmf, const SubsetMixture& mix) {
  json arr = json::array();
  for (const auto& c : mix.components()) {
    json labels = json::array();
    for (std::size_t i : c.subset) labels.push_back(pmf.label(i));
    arr.push_back({{"subset", labels}, {"indices", c.subset}, {"weight", c.weight}});
  }
  return arr;
}

// Flattens nested JSON into "path: value" lines.
void write_text(const json& j, const std::string& prefix, int precision,
                std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      write_text(value, prefix.empty() ? key : prefix + "." + key, precision, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      write_text(j[i], prefix + "[" + std::to_string(i) + "]", precision, out);
    }
  } else {
    out << prefix << ": ";
    if (j.is_number_float()) {
      out << format_double(j.get<double>(), precision);
    } else if (j.is_string()) {
      out << j.get<std::string>();
    } else {
      out << j.dump();
    }
    out << '\n';
  }
}

struct CommonOptions {
  std::string file = "-";
  std::size_t k = 1;
  std::string alpha;
  bool bits = false;
  std::string out;
  std::string format = "json";
};

double unit_factor(bool bits) { return bits ? 1.0 / std::numbers::ln2 : 1.0; }

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  DistributionFile load(const std::string& path) {
    return DistributionFile::load(path, in_);
  }

  void emit(const ResultEnvelope& env, const CommonOptions& opts) {
    std::ostringstream body;
    if (opts.format == "text") {
      body << "command: " << env.command << '\n'
           << "input_digest: " << env.input_digest << '\n';
      if (env.alpha) body << "alpha: " << *env.alpha << '\n';
      if (env.k) body << "k: " << *env.k << '\n';
      write_text(env.outputs, "", output_precision(), body);
    } else {
      body << env.serialize() << '\n';
    }
    if (opts.out.empty()) {
      out_ << body.str();
    } else {
      std::ofstream file(opts.out);
      if (!file) throw ValidationError("cannot open output file '" + opts.out + "'");
      file << body.str();
    }
  }

  ResultEnvelope envelope(const std::string& command, const DistributionFile& file,
                          Alpha alpha, std::size_t k) {
    ResultEnvelope env;
    env.command = command;
    env.input_digest = file.digest();
    env.alpha = alpha.to_string();
    env.k = k;
    return env;
  }

  ResultEnvelope loss(const CommonOptions& o) {
    const auto file = load(o.file);
    const Alpha alpha = Alpha::parse(o.alpha);
    const GuessBudget k(o.k);
    auto env = envelope("loss", file, alpha, o.k);
    const double log_unit = alpha.is_one() ? unit_factor(o.bits) : 1.0;
    json& out = env.outputs;
    out["unit"] = o.bits ? "bits" : "nats";
    if (file.is_pmf()) {
      const Pmf& pmf = std::get<Pmf>(file.payload);
      const LossReport r = minimal_loss(pmf, k, alpha);
      out["value"] = r.value * log_unit;
      out["s_star"] = r.s_star;
      out["lambda"] = r.lambda;
      out["coverage"] = coverage_json(pmf, r.coverage);
      out["renyi_entropy"] = renyi_entropy(pmf, alpha).nats() * unit_factor(o.bits);
    } else if (file.is_joint()) {
      const JointPmf& joint = std::get<JointPmf>(file.payload);
      const ConditionalLoss c = minimal_loss_conditional(joint, k, alpha);
      out["value"] = c.value * log_unit;
      json per_y = json::array();
      const Pmf py = joint.marginal_y();
      for (std::size_t y = 0; y < c.per_y.size(); ++y) {
        json row = {{"y", py.label(y)}, {"mass", py[y]}};
        if (c.per_y[y]) {
          row["value"] = c.per_y[y]->value * log_unit;
          row["s_star"] = c.per_y[y]->s_star;
        } else {
          row["value"] = nullptr;
        }
        per_y.push_back(row);
      }
      out["per_y"] = per_y;
    } else {
      throw ValidationError("loss expects a pmf or joint distribution file");
    }
    return env;
  }

  json strategy_for(const Pmf& pmf, GuessBudget k, Alpha alpha,
                    std::optional<std::uint64_t> seed, std::size_t samples) {
    const LossReport r = minimal_loss(pmf, k, alpha);
    const SubsetMixture mix = realize_coverage(r.coverage, pmf);
    json out;
    out["s_star"] = r.s_star;
    out["coverage"] = coverage_json(pmf, r.coverage);
    out["mixture"] = mixture_json(pmf, mix);
    out["optimal_loss"] = r.value;
    out["strategy_loss"] = strategy_loss(mix, pmf, alpha);
    if (seed || samples > 0) {
      const std::uint64_t s = seed.value_or(0);
      json draws = json::array();
      for (const auto& guess : sample_guesses(mix, s, std::max<std::size_t>(samples, 1))) {
        json labels = json::array();
        for (std::size_t i : guess) labels.push_back(pmf.label(i));
        draws.push_back(labels);
      }
      out["seed"] = s;
      out["samples"] = draws;
    }
    return out;
  }

  ResultEnvelope strategy(const CommonOptions& o, std::optional<std::uint64_t> seed,
                          std::size_t samples) {
    const auto file = load(o.file);
    const Alpha alpha = Alpha::parse(o.alpha);
    const GuessBudget k(o.k);
    auto env = envelope("strategy", file, alpha, o.k);
    if (file.is_pmf()) {
      env.outputs = strategy_for(std::get<Pmf>(file.payload), k, alpha, seed, samples);
    } else if (file.is_joint()) {
      const JointPmf& joint = std::get<JointPmf>(file.payload);
      const Pmf py = joint.marginal_y();
      json per_y = json::array();
      for (std::size_t y = 0; y < joint.cols(); ++y) {
        if (!(py[y] > 0.0)) continue;
        json row = strategy_for(conditional_pmf(joint, y), k, alpha, seed, samples);
        row["y"] = py.label(y);
        per_y.push_back(row);
      }
      env.outputs["per_y"] = per_y;
    } else {
      throw ValidationError("strategy expects a pmf or joint distribution file");
    }
    return env;
  }

  ResultEnvelope leakage(const CommonOptions& o) {
    const auto file = load(o.file);
    const Alpha alpha = Alpha::parse(o.alpha);
    const GuessBudget k(o.k);
    if (!file.is_joint()) {
      throw ValidationError("leakage expects a joint distribution file");
    }
    const JointPmf& joint = std::get<JointPmf>(file.payload);
    auto env = envelope("leakage", file, alpha, o.k);
    const LeakageReport r = alpha_leakage(joint, k, alpha);
    json& out = env.outputs;
    out["unit"] = o.bits ? "bits" : "nats";
    out["value"] = r.value * unit_factor(o.bits);
    out["numerator_exponent"] = r.numerator_exponent;
    out["denominator_exponent"] = r.denominator_exponent;
    out["robust"] = r.robust;
    const auto& w = r.robustness.worst;
    json offender = {
        {"source", w.source == TiltedOffender::Source::kMarginal ? "marginal"
                                                                 : "conditional"},
        {"x", joint.marginal_x().label(w.x)},
        {"tilted_mass", w.tilted_mass},
        {"threshold", r.robustness.threshold}};
    offender["y"] = w.y ? json(joint.marginal_y().label(*w.y)) : json(nullptr);
    out["max_tilted"] = offender;
    return env;
  }

  int sweep(const std::string& path, const std::string& k_text,
            const std::string& alpha_text, const std::string& out_path) {
    const auto file = load(path);
    const auto ks = parse_k_range(k_text);
    const auto alphas = parse_alpha_grid(alpha_text);
    const int precision = output_precision();
    std::ostringstream csv;
    const bool joint = file.is_joint();
    if (!joint && !file.is_pmf()) {
      throw ValidationError("sweep expects a pmf or joint distribution file");
    }
    csv << (joint ? "# k,alpha,loss,leakage,s_star,robust\n"
                  : "# k,alpha,value,s_star,robust\n");
    for (std::size_t kv : ks) {
      const GuessBudget k(kv);
      for (const Alpha& alpha : alphas) {
        csv << kv << ',' << alpha_token(alpha, precision) << ',';
        if (joint) {
          const JointPmf& j = std::get<JointPmf>(file.payload);
          const double loss = minimal_loss_conditional(j, k, alpha).value;
          const LossReport marginal = minimal_loss(j.marginal_x(), k, alpha);
          csv << format_double(loss, precision) << ',';
          if (alpha.is_generic()) {
            csv << format_double(alpha_leakage(j, k, alpha).value, precision);
          }
          csv << ',' << marginal.s_star << ','
              << (robustness_condition(j, k, alpha).robust ? 1 : 0) << '\n';
        } else {
          const Pmf& pmf = std::get<Pmf>(file.payload);
          const LossReport r = minimal_loss(pmf, k, alpha);
          const Pmf tilt = tilted(pmf, alpha);
          const double top = *std::max_element(tilt.probs().begin(), tilt.probs().end());
          const bool robust = top <= 1.0 / static_cast<double>(kv) + 1e-12;
          csv << format_double(r.value, precision) << ',' << r.s_star << ','
              << (robust ? 1 : 0) << '\n';
        }
      }
    }
    if (out_path.empty()) {
      out_ << csv.str();
    } else {
      std::ofstream f(out_path);
      if (!f) throw ValidationError("cannot open output file '" + out_path + "'");
      f << csv.str();
    }
    return kOk;
  }

  ResultEnvelope verify(const CommonOptions& o, double tol, std::size_t max_iterations) {
    const auto file = load(o.file);
    const Alpha alpha = Alpha::parse(o.alpha);
    const GuessBudget k(o.k);
    if (!file.is_pmf()) throw ValidationError("verify expects a pmf file");
    const Pmf& pmf = std::get<Pmf>(file.payload);
    auto env = envelope("verify", file, alpha, o.k);
    json& out = env.outputs;
    const LossReport r = minimal_loss(pmf, k, alpha);
    out["closed_form"] = r.value;
    out["s_star"] = r.s_star;

    bool ok = true;
    if (o.k >= pmf.positive_support()) {
      out["oracle_skipped"] = true;
      out["reason"] = "k >= positive support: minimal loss is 0";
    } else {
      const auto d = oracle::minimize_expected_loss(
          pmf, k, alpha, tol, oracle::DescentOptions{.max_iterations = max_iterations});
      const double abs_gap = std::abs(d.value - r.value);
      const double rel_gap = abs_gap / std::max(std::abs(r.value), 1e-300);
      double cov_diff = 0.0;
      for (std::size_t i = 0; i < pmf.size(); ++i) {
        cov_diff = std::max(cov_diff, std::abs(d.t[i] - r.coverage.t[i]));
      }
      out["oracle_skipped"] = false;
      out["oracle_value"] = d.value;
      out["absolute_gap"] = abs_gap;
      out["relative_gap"] = rel_gap;
      out["frank_wolfe_gap"] = d.gap;
      out["iterations"] = d.iterations;
      out["max_coverage_diff"] = cov_diff;
      ok = ok && (rel_gap <= kVerifyRelative || abs_gap <= tol) &&
           cov_diff <= kVerifyCoverage;
    }

    const GuessBudget draw(r.coverage.guesses_per_draw());
    const Admissibility adm = is_admissible(r.coverage.t, draw);
    out["admissible"] = adm.admissible();
    try {
      const bool feasible = oracle::lp_feasible(r.coverage.t, draw);
      out["lp_checked"] = true;
      out["lp_feasible"] = feasible;
      out["lp_agrees"] = feasible == adm.admissible();
      ok = ok && feasible == adm.admissible();
    } catch (const DomainError& e) {
      out["lp_checked"] = false;
      out["lp_skipped_reason"] = e.what();
    }
    ok = ok && adm.admissible();
    out["ok"] = ok;
    return env;
  }

  ResultEnvelope check_admissible(const std::string& path,
                                  const std::string& inline_t, std::size_t kv) {
    std::vector<double> t;
    ResultEnvelope env;
    env.command = "check-admissible";
    if (!inline_t.empty()) {
      std::stringstream ss(inline_t);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        try {
          std::size_t used = 0;
          t.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ValidationError("cannot parse coverage entry '" + tok + "'");
        }
      }
      DistributionFile f{DistributionFile::Coverage{t}};
      env.input_digest = f.digest();
    } else {
      const auto file = load(path);
      if (!file.is_coverage()) {
        throw ValidationError("check-admissible expects a coverage file or --coverage");
      }
      t = std::get<DistributionFile::Coverage>(file.payload).t;
      env.input_digest = file.digest();
    }
    const GuessBudget k(kv);
    env.k = kv;
    const Admissibility adm = is_admissible(t, k);
    json& out = env.outputs;
    out["admissible"] = adm.admissible();
    out["reason"] = to_string(adm.reason);
    out["index"] = adm.index ? json(*adm.index) : json(nullptr);
    out["sum"] = adm.sum;
    try {
      const auto lp = oracle::lp_feasibility(t, k);
      out["lp_checked"] = true;
      out["lp_feasible"] = lp.feasible;
      out["lp_agrees"] = lp.feasible == adm.admissible();
      if (lp.certificate) {
        out["farkas_certificate"] = lp.certificate->y;
        out["farkas_verified"] = lp.certificate->verified;
      }
      json wit = json::array();
      for (const auto& [subset, weight] : lp.witness) {
        wit.push_back({{"indices", subset}, {"weight", weight}});
      }
      out["witness"] = wit;
    } catch (const DomainError& e) {
      out["lp_checked"] = false;
      out["lp_skipped_reason"] = e.what();
    }
    return env;
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

void add_common(CLI::App* sub, CommonOptions& o, bool needs_alpha) {
  sub->add_option("file", o.file, "Distribution file (JSON); '-' reads stdin")
      ->capture_default_str();
  sub->add_option("-k", o.k, "Number of guesses")->required()->check(CLI::PositiveNumber);
  auto* a = sub->add_option("--alpha", o.alpha, "Loss order: decimal, 1, or inf");
  if (needs_alpha) a->required();
  sub->add_option("--out", o.out, "Write output to this path instead of stdout");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

}  // namespace

// ---------------------------------------------------------------------------
// DistributionFile

DistributionFile DistributionFile::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid distribution file: ") + e.what());
  }
  if (!j.is_object()) {
    throw ValidationError("invalid distribution file: top level must be an object");
  }
  try {
    std::string kind;
    if (j.contains("kind")) {
      kind = j.at("kind").get<std::string>();
    } else if (j.contains("probs") && j.at("probs").is_array() &&
               !j.at("probs").empty() && j.at("probs").front().is_array()) {
      kind = "joint";
    } else if (j.contains("t")) {
      kind = "coverage";
    } else {
      kind = "pmf";
    }
    if (kind == "pmf") {
      return {Pmf(j.at("probs").get<std::vector<double>>(), read_labels(j, "labels"))};
    }
    if (kind == "joint") {
      return {JointPmf::from_rows(j.at("probs").get<std::vector<std::vector<double>>>(),
                                  read_labels(j, "x_labels"),
                                  read_labels(j, "y_labels"))};
    }
    if (kind == "coverage") {
      return {Coverage{j.at("t").get<std::vector<double>>()}};
    }
    throw ValidationError("invalid distribution file: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid distribution file: ") + e.what());
  }
}

DistributionFile DistributionFile::load(const std::string& path,
                                        std::istream& stdin_stream) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(stdin_stream),
                std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot open distribution file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return parse(text);
}

json DistributionFile::to_json() const {
  json j;
  if (const auto* pmf = std::get_if<Pmf>(&payload)) {
    j["kind"] = "pmf";
    j["probs"] = std::vector<double>(pmf->probs().begin(), pmf->probs().end());
    if (pmf->has_labels()) j["labels"] = pmf->labels();
  } else if (const auto* joint = std::get_if<JointPmf>(&payload)) {
    j["kind"] = "joint";
    json rows = json::array();
    for (std::size_t x = 0; x < joint->rows(); ++x) {
      json row = json::array();
      for (std::size_t y = 0; y < joint->cols(); ++y) row.push_back((*joint)(x, y));
      rows.push_back(row);
    }
    j["probs"] = rows;
    if (!joint->x_labels().empty()) j["x_labels"] = joint->x_labels();
    if (!joint->y_labels().empty()) j["y_labels"] = joint->y_labels();
  } else {
    j["kind"] = "coverage";
    j["t"] = std::get<Coverage>(payload).t;
  }
  return j;
}

std::string DistributionFile::digest() const {
  const std::string canonical = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

// ---------------------------------------------------------------------------
// ResultEnvelope

json ResultEnvelope::to_json() const {
  json j;
  j["tool"] = "guesswork";
  j["version"] = version;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["alpha"] = alpha ? json(*alpha) : json(nullptr);
  j["k"] = k ? json(*k) : json(nullptr);
  j["outputs"] = outputs;
  return j;
}

ResultEnvelope ResultEnvelope::from_json(const json& j) {
  ResultEnvelope env;
  env.version = j.at("version").get<std::string>();
  env.command = j.at("command").get<std::string>();
  env.input_digest = j.at("input_digest").get<std::string>();
  if (!j.at("alpha").is_null()) env.alpha = j.at("alpha").get<std::string>();
  if (!j.at("k").is_null()) env.k = j.at("k").get<std::size_t>();
  env.outputs = j.at("outputs");
  return env;
}

std::string ResultEnvelope::serialize() const { return to_json().dump(2); }

ResultEnvelope ResultEnvelope::parse(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid result envelope: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Parsing helpers

int output_precision() {
  if (const char* env = std::getenv("GUESSWORK_PRECISION")) {
    try {
      const int p = std::stoi(env);
      if (p >= 1 && p <= 17) return p;
    } catch (const std::exception&) {
    }
  }
  return 12;
}

std::vector<std::size_t> parse_k_range(std::string_view text) {
  auto parse_one = [&](const std::string& tok) -> std::size_t {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size() || v < 1) throw std::invalid_argument(tok);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse k value '" + tok + "'");
    }
  };
  const std::string s(text);
  if (s.empty()) throw ValidationError("k range is empty");
  std::vector<std::size_t> ks;
  if (const auto colon = s.find(':'); colon != std::string::npos) {
    const std::size_t lo = parse_one(s.substr(0, colon));
    const std::size_t hi = parse_one(s.substr(colon + 1));
    if (hi < lo) throw ValidationError("k range '" + s + "' is empty");
    for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) ks.push_back(parse_one(tok));
  if (ks.empty()) throw ValidationError("k range is empty");
  return ks;
}

std::vector<Alpha> parse_alpha_grid(std::string_view text) {
  const std::string s(text);
  std::vector<Alpha> grid;
  if (s.find(':') != std::string::npos) {
    std::stringstream ss(s);
    std::vector<std::string> parts;
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) {
      throw ValidationError("alpha range must be lo:hi:count");
    }
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
    try {
      lo = std::stod(parts[0]);
      hi = std::stod(parts[1]);
      count = std::stol(parts[2]);
    } catch (const std::exception&) {
      throw ValidationError("cannot parse alpha range '" + s + "'");
    }
    if (count < 1) throw ValidationError("alpha grid is empty");
    for (long i = 0; i < count; ++i) {
      const double v =
          count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      grid.push_back(Alpha::from_value(v));
    }
    return grid;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) grid.push_back(Alpha::parse(tok));
  }
  if (grid.empty()) throw ValidationError("alpha grid is empty");
  return grid;
}

// ---------------------------------------------------------------------------
// Entry point

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Optimal k-guess strategies and leakage under alpha-loss", "guesswork"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOptions loss_opts;
  auto* loss_cmd = app.add_subcommand("loss", "Minimal expected alpha-loss for k guesses");
  add_common(loss_cmd, loss_opts, true);
  loss_cmd->add_flag("--bits", loss_opts.bits, "Report log-valued quantities in bits");

  CommonOptions strat_opts;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  auto* strat_cmd =
      app.add_subcommand("strategy", "Optimal coverage and a randomized guess-set mixture");
  add_common(strat_cmd, strat_opts, true);
  auto* seed_opt = strat_cmd->add_option("--seed", seed, "Seed for sampled guess lists");
  strat_cmd->add_option("--samples", samples, "Number of guess lists to sample");

  CommonOptions leak_opts;
  auto* leak_cmd = app.add_subcommand("leakage", "Alpha-leakage with k guesses");
  add_common(leak_cmd, leak_opts, true);
  leak_cmd->add_flag("--bits", leak_opts.bits, "Report leakage in bits");

  std::string sweep_file = "-";
  std::string k_range;
  std::string alpha_grid;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate results over a k range and alpha grid");
  sweep_cmd->add_option("file", sweep_file, "Distribution file; '-' reads stdin");
  sweep_cmd->add_option("--k-range", k_range, "e.g. 1:4 or 1,2,5")->required();
  sweep_cmd->add_option("--alpha-grid", alpha_grid, "e.g. 0.5,1,2,inf or 0.5:3:26")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (stdout if omitted)");

  CommonOptions verify_opts;
  double tol = 1e-12;
  auto* verify_cmd =
      app.add_subcommand("verify", "Cross-check the closed form against numerical oracles");
  add_common(verify_cmd, verify_opts, true);
  verify_cmd->add_option("--tol", tol, "Oracle duality-gap tolerance")->capture_default_str();
  std::size_t max_iterations = oracle::DescentOptions{}.max_iterations;
  verify_cmd->add_option("--max-iterations", max_iterations, "Oracle iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CommonOptions adm_opts;
  std::string inline_t;
  auto* adm_cmd = app.add_subcommand("check-admissible",
                                     "Decide whether a coverage vector is realizable");
  add_common(adm_cmd, adm_opts, false);
  adm_cmd->add_option("--coverage", inline_t, "Comma-separated coverage vector");

  std::vector<std::string> argv_store{"guesswork"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  Runner runner(in, out);
  try {
    if (*loss_cmd) {
      runner.emit(runner.loss(loss_opts), loss_opts);
    } else if (*strat_cmd) {
      std::optional<std::uint64_t> s;
      if (seed_opt->count() > 0) s = seed;
      runner.emit(runner.strategy(strat_opts, s, samples), strat_opts);
    } else if (*leak_cmd) {
      runner.emit(runner.leakage(leak_opts), leak_opts);
    } else if (*sweep_cmd) {
      return runner.sweep(sweep_file, k_range, alpha_grid, sweep_out);
    } else if (*verify_cmd) {
      runner.emit(runner.verify(verify_opts, tol, max_iterations), verify_opts);
    } else if (*adm_cmd) {
      runner.emit(runner.check_admissible(adm_opts.file, inline_t, adm_opts.k), adm_opts);
    }
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const ConvergenceError& e) {
    err << "oracle error: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace guesswork::cli
