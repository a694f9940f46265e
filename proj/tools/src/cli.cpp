#include "qcorr/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/ensembles.hpp"
#include "qcorr/localize.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/reproduce.hpp"
#include "qcorr/survey.hpp"

namespace qcorr::cli {

namespace {

constexpr QcMeasure kAllMeasures[] = {QcMeasure::Negativity, QcMeasure::Concurrence, QcMeasure::Discord};

struct FamilyArgs {
  std::string name;
  CLI::Option* n_opt = nullptr;
  CLI::Option* r_opt = nullptr;
  CLI::Option* alpha2_opt = nullptr;
  CLI::Option* a_opt = nullptr;
  CLI::Option* phi_opt = nullptr;
  int n = 0;
  int r = 0;
  double alpha2 = 0.0;
  std::vector<double> a;
  double phi = 0.0;

  bool given(const CLI::Option* o) const { return o && o->count() > 0; }
};

void add_family_options(CLI::App& cmd, FamilyArgs& f) {
  f.n_opt = cmd.add_option("--n", f.n, "Number of qubits");
  f.r_opt = cmd.add_option("--r", f.r, "Excitation count (dicke, dicke-equal)");
  f.alpha2_opt = cmd.add_option("--alpha2", f.alpha2, "Weight of |0...0> in the gGHZ state");
  f.a_opt = cmd.add_option("--a", f.a, "Five canonical3 coefficients a1..a5")->delimiter(',')->expected(5);
  f.phi_opt = cmd.add_option("--phi", f.phi, "canonical3 phase");
}

struct Quantity {
  QcMeasure measure;
  double alpha;
};

QcMeasure parse_measure_or_throw(const std::string& text) {
  if (auto m = parse_measure(text)) return *m;
  throw UsageError("unknown measure '" + text + "' (use neg, conc or disc)");
}

double parse_positive(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(what + " must be a positive number, got '" + text + "'");
  }
  return v;
}

// "neg:1" -> (Negativity, 1); a bare "neg" takes `default_alpha`.
Quantity parse_quantity(const std::string& text, std::optional<double> default_alpha) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    if (!default_alpha) throw UsageError("expected measure:alpha, got '" + text + "'");
    return {parse_measure_or_throw(text), *default_alpha};
  }
  return {parse_measure_or_throw(text.substr(0, colon)),
          parse_positive(text.substr(colon + 1), "exponent")};
}

// Parses a 1-based "i,j" pair into 0-based indices.
QubitPair parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    std::size_t u1 = 0, u2 = 0;
    const std::string s1 = text.substr(0, comma), s2 = text.substr(comma + 1);
    const int i = std::stoi(s1, &u1);
    const int j = std::stoi(s2, &u2);
    if (u1 != s1.size() || u2 != s2.size()) throw std::invalid_argument("");
    return {i - 1, j - 1};
  } catch (const std::exception&) {
    throw UsageError("--pair expects two 1-based qubit labels 'i,j', got '" + text + "'");
  }
}

std::string pair_text(QubitPair p) { return std::to_string(p.first + 1) + std::to_string(p.second + 1); }

void require_absent(const FamilyArgs& f, const CLI::Option* o, const std::string& flag) {
  if (f.given(o)) throw UsageError(flag + " does not apply to family '" + f.name + "'");
}

void require_present(const FamilyArgs& f, const CLI::Option* o, const std::string& flag) {
  if (!f.given(o)) throw UsageError("family '" + f.name + "' needs " + flag);
}

double gghz_alpha(const FamilyArgs& f) {
  if (!(f.alpha2 > 0.0 && f.alpha2 < 1.0)) throw UsageError("--alpha2 must lie in (0, 1)");
  return std::sqrt(f.alpha2);
}

int three_qubits(const FamilyArgs& f) {
  if (f.given(f.n_opt) && f.n != 3) {
    throw UsageError("family '" + f.name + "' is three-qubit only; --n " + std::to_string(f.n) + " conflicts");
  }
  return 3;
}

// Families that the survey can sample.
std::optional<StateFamily> sampled_family(const FamilyArgs& f) {
  if (f.name == "random") {
    require_present(f, f.n_opt, "--n");
    for (auto [o, flag] : {std::pair{f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"},
                           {f.phi_opt, "--phi"}})
      require_absent(f, o, flag);
    return family::HaarRandom{f.n};
  }
  if (f.name == "wclass") {
    three_qubits(f);
    for (auto [o, flag] : {std::pair{f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"},
                           {f.phi_opt, "--phi"}})
      require_absent(f, o, flag);
    return family::WClass{};
  }
  if (f.name == "dicke") {
    require_present(f, f.n_opt, "--n");
    require_present(f, f.r_opt, "--r");
    for (auto [o, flag] : {std::pair{f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"}, {f.phi_opt, "--phi"}})
      require_absent(f, o, flag);
    return family::Dicke{f.n, f.r};
  }
  if (f.name == "gghz") {
    require_present(f, f.n_opt, "--n");
    require_present(f, f.alpha2_opt, "--alpha2");
    for (auto [o, flag] : {std::pair{f.r_opt, "--r"}, {f.a_opt, "--a"}, {f.phi_opt, "--phi"}})
      require_absent(f, o, flag);
    return family::GGHZ{f.n, gghz_alpha(f)};
  }
  if (f.name == "canonical3") {
    three_qubits(f);
    require_present(f, f.a_opt, "--a");
    for (auto [o, flag] : {std::pair{f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"}}) require_absent(f, o, flag);
    family::CanonicalThreeQubit c{};
    for (std::size_t k = 0; k < 5; ++k) c.a[k] = f.a[k];
    c.phi = f.phi;
    return c;
  }
  return std::nullopt;
}

StateFamily survey_family(const FamilyArgs& f) {
  auto fam = sampled_family(f);
  if (!fam) {
    throw UsageError("unknown survey family '" + f.name + "' (random, wclass, dicke, gghz, canonical3)");
  }
  try {
    validate(*fam);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return *fam;
}

PureState measure_state(const FamilyArgs& f, SeedSpec seed) {
  auto plain = [&](std::initializer_list<std::pair<const CLI::Option*, const char*>> absent) {
    for (auto [o, flag] : absent) require_absent(f, o, flag);
  };
  try {
    if (f.name == "ghz") {
      require_present(f, f.n_opt, "--n");
      plain({{f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"}, {f.phi_opt, "--phi"}});
      if (f.n < 2 || f.n > kMaxQubits) throw UsageError("ghz needs 2..8 qubits");
      Vector v = Vector::Zero(Eigen::Index{1} << f.n);
      v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
      return PureState(v);
    }
    if (f.name == "w") {
      require_present(f, f.n_opt, "--n");
      plain({{f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"}, {f.phi_opt, "--phi"}});
      return make_dicke_equal(f.n, 1);
    }
    if (f.name == "dicke-equal") {
      require_present(f, f.n_opt, "--n");
      require_present(f, f.r_opt, "--r");
      plain({{f.alpha2_opt, "--alpha2"}, {f.a_opt, "--a"}, {f.phi_opt, "--phi"}});
      return make_dicke_equal(f.n, f.r);
    }
    auto fam = sampled_family(f);
    if (!fam) {
      throw UsageError("unknown family '" + f.name +
                       "' (random, wclass, dicke, gghz, canonical3, ghz, w, dicke-equal)");
    }
    validate(*fam);
    return sample(*fam, seed);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int default_workers() {
  if (const char* env = std::getenv("QCORR_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

std::string join_measures(const std::vector<QcMeasure>& ms) {
  std::string s;
  for (auto m : ms) s += (s.empty() ? "" : ",") + std::string(measure_key(m));
  return s.empty() ? "-" : s;
}

std::string join_alphas(const std::vector<double>& as) {
  std::string s;
  for (double a : as) s += (s.empty() ? "" : ",") + format_alpha(a);
  return s.empty() ? "-" : s;
}

// ---------------------------------------------------------------- measure

struct MeasureArgs {
  FamilyArgs family;
  std::string state_file;
  bool normalize = false;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  bool ggm = false;
  std::vector<std::string> mono, alpha_c, localize, lqc_sum, bisum;
  std::string pair = "1,2";
  int nodal = 1;
  int restarts = 20;
  CLI::Option* family_opt = nullptr;
  CLI::Option* state_opt = nullptr;
};

void add_measure(CLI::App& app, MeasureArgs& a) {
  auto* cmd = app.add_subcommand("measure", "Report correlation quantities of a single state");
  a.family_opt = cmd->add_option("--family", a.family.name,
                                 "random, wclass, dicke, gghz, canonical3, ghz, w, dicke-equal");
  a.state_opt = cmd->add_option("--state", a.state_file, "Amplitude file, one 're im' pair per line");
  a.family_opt->excludes(a.state_opt);
  cmd->add_flag("--normalize", a.normalize, "Rescale the amplitude file to unit norm");
  add_family_options(*cmd, a.family);
  cmd->add_option("--seed", a.seed, "Master seed for random families")->capture_default_str();
  cmd->add_option("--index", a.index, "Sample index for random families")->capture_default_str();
  cmd->add_flag("--ggm", a.ggm, "Generalized geometric measure");
  cmd->add_option("--mono", a.mono, "Monogamy scores, measure:alpha")->delimiter(',');
  cmd->add_option("--alpha-c", a.alpha_c, "Critical exponents, measure")->delimiter(',');
  cmd->add_option("--localize", a.localize, "Localized pair value, measure:alpha")->delimiter(',');
  cmd->add_option("--lqc-sum", a.lqc_sum, "Localized sum over partners, measure[:alpha]")->delimiter(',');
  cmd->add_option("--bisum", a.bisum, "Bipartite sum over partners, measure:alpha")->delimiter(',');
  cmd->add_option("--pair", a.pair, "1-based qubit pair for --localize")->capture_default_str();
  cmd->add_option("--nodal", a.nodal, "1-based nodal qubit")->capture_default_str();
  cmd->add_option("--restarts", a.restarts, "Localization restarts")->capture_default_str();
}

int run_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  if (a.family_opt->count() == 0 && a.state_opt->count() == 0) {
    throw UsageError("measure needs --family or --state");
  }
  const bool from_file = a.state_opt->count() > 0;
  if (from_file) {
    const auto& f = a.family;
    for (auto [o, flag] : {std::pair{f.n_opt, "--n"}, {f.r_opt, "--r"}, {f.alpha2_opt, "--alpha2"},
                           {f.a_opt, "--a"}, {f.phi_opt, "--phi"}}) {
      if (f.given(o)) throw UsageError(std::string(flag) + " conflicts with --state");
    }
  } else if (a.normalize) {
    throw UsageError("--normalize only applies to --state");
  }

  std::vector<Quantity> mono, localize, lqc_sum, bisum;
  std::vector<QcMeasure> alpha_c;
  for (const auto& t : a.mono) mono.push_back(parse_quantity(t, std::nullopt));
  for (const auto& t : a.localize) localize.push_back(parse_quantity(t, std::nullopt));
  for (const auto& t : a.lqc_sum) lqc_sum.push_back(parse_quantity(t, 1.0));
  for (const auto& t : a.bisum) bisum.push_back(parse_quantity(t, std::nullopt));
  for (const auto& t : a.alpha_c) alpha_c.push_back(parse_measure_or_throw(t));
  const QubitPair pair = parse_pair(a.pair);
  if (a.restarts < 1) throw UsageError("--restarts must be >= 1");
  bool ggm_wanted = a.ggm;
  const bool explicit_quantities =
      a.ggm || !mono.empty() || !localize.empty() || !lqc_sum.empty() || !bisum.empty() || !alpha_c.empty();

  // Config problems are usage errors; a broken amplitude file is a runtime one.
  std::optional<PureState> state;
  if (!from_file) state = measure_state(a.family, {a.seed, a.index});
  err << "config: verb=measure source="
      << (from_file ? "file:" + a.state_file : "family:" + a.family.name);
  if (!from_file) {
    err << " seed=" << a.seed << " index=" << a.index;
    if (a.family.given(a.family.alpha2_opt)) err << " alpha2=" << format_real(a.family.alpha2);
    if (a.family.given(a.family.r_opt)) err << " r=" << a.family.r;
  }
  err << " normalize=" << (a.normalize ? 1 : 0) << " pair=" << pair_text(pair) << " nodal=" << a.nodal
      << " restarts=" << a.restarts << (explicit_quantities ? "" : " quantities=all") << '\n';
  if (from_file) state = read_amplitude_file(a.state_file, a.normalize);

  const int n = state->num_qubits();
  const int nodal = a.nodal - 1;
  if (nodal < 0 || nodal >= n) throw UsageError("--nodal out of range for " + std::to_string(n) + " qubits");
  if (!explicit_quantities) {
    ggm_wanted = true;
    if (n >= 3) {
      for (auto m : kAllMeasures) {
        mono.push_back({m, 1.0});
        alpha_c.push_back(m);
        localize.push_back({m, 1.0});
        lqc_sum.push_back({m, 1.0});
        bisum.push_back({m, 1.0});
      }
    }
  } else if (n < 3 && (!mono.empty() || !localize.empty() || !lqc_sum.empty() || !bisum.empty() ||
                       !alpha_c.empty())) {
    throw UsageError("monogamy and localization need at least three qubits");
  }
  if (!localize.empty()) {
    const auto [i, j] = pair;
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw UsageError("--pair out of range");
  }
  if (ggm_wanted && n < 2) throw UsageError("ggm needs at least two qubits");

  LocalizeOptions lo;
  lo.restarts = a.restarts;
  if (ggm_wanted) out << "ggm=" << format_real(ggm(*state)) << '\n';
  for (const auto& q : mono) {
    out << "delta_" << measure_key(q.measure) << '_' << format_alpha(q.alpha) << '='
        << format_real(monogamy_score(*state, q.measure, q.alpha, nodal).score) << '\n';
  }
  for (auto m : alpha_c) {
    const auto c = critical_exponent(monogamy_terms(*state, m, nodal));
    out << "alpha_c_" << measure_key(m) << '=' << format_real(c.value) << '\n';
    out << "alpha_c_" << measure_key(m) << "_censored=" << (c.right_censored ? 1 : 0) << '\n';
  }
  for (const auto& q : localize) {
    out << "lqc_" << measure_key(q.measure) << "_pair" << pair_text(pair) << '_' << format_alpha(q.alpha) << '='
        << format_real(qcorr::localize(*state, pair, q.measure, q.alpha, lo).value) << '\n';
  }
  for (const auto& q : lqc_sum) {
    out << "lqc_sum_" << measure_key(q.measure) << '_' << format_alpha(q.alpha) << '='
        << format_real(localized_sum(*state, q.measure, q.alpha, nodal, lo)) << '\n';
  }
  for (const auto& q : bisum) {
    out << "bisum_" << measure_key(q.measure) << '_' << format_alpha(q.alpha) << '='
        << format_real(bipartite_sum(*state, q.measure, q.alpha, nodal)) << '\n';
  }
  return kExitOk;
}

// ----------------------------------------------------------------- survey

struct SurveyArgs {
  FamilyArgs family;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> measures;
  std::vector<std::string> alphas;
  bool ggm = false, mono = false, alpha_c = false, localize = false, lqc_sum = false, bisum = false;
  double lqc_sum_alpha = 1.0;
  std::string pair = "1,2";
  int nodal = 1;
  double bin_width = 0.05;
  int workers = 1;
  int restarts = 20;
  std::string out_path;
  std::string hist_path;
};

void add_survey(CLI::App& app, SurveyArgs& a) {
  auto* cmd = app.add_subcommand("survey", "Seeded Monte-Carlo survey written as CSV");
  cmd->add_option("--family", a.family.name, "random, wclass, dicke, gghz, canonical3")->required();
  add_family_options(*cmd, a.family);
  cmd->add_option("--samples", a.samples, "Number of samples")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.seed, "Master seed")->required();
  cmd->add_option("--measures", a.measures, "neg, conc, disc")->delimiter(',');
  cmd->add_option("--alphas", a.alphas, "Exponents for scores, localized pairs and bipartite sums")
      ->delimiter(',');
  cmd->add_flag("--ggm", a.ggm, "GGM only (always computed)");
  cmd->add_flag("--mono", a.mono, "Monogamy scores (default when --measures is given)");
  cmd->add_flag("--alpha-c", a.alpha_c, "Critical exponents");
  cmd->add_flag("--localize", a.localize, "Localized value of --pair at every exponent");
  cmd->add_flag("--lqc-sum", a.lqc_sum, "Localized sum over partners of the nodal qubit");
  cmd->add_flag("--bisum", a.bisum, "Bipartite sums over partners");
  cmd->add_option("--lqc-sum-alpha", a.lqc_sum_alpha, "Exponent of the localized sum")->capture_default_str();
  cmd->add_option("--pair", a.pair, "1-based pair for --localize")->capture_default_str();
  cmd->add_option("--nodal", a.nodal, "1-based nodal qubit")->capture_default_str();
  cmd->add_option("--bin-width", a.bin_width, "GGM histogram bin width")->capture_default_str();
  a.workers = default_workers();
  cmd->add_option("--workers", a.workers, "Worker threads (default from QCORR_WORKERS, else 1)")
      ->capture_default_str();
  cmd->add_option("--restarts", a.restarts, "Localization restarts")->capture_default_str();
  cmd->add_option("--out", a.out_path, "CSV destination (default stdout)");
  cmd->add_option("--hist-out", a.hist_path, "Write the GGM histogram as CSV");
}

SurveyConfig survey_config(const SurveyArgs& a) {
  SurveyConfig c;
  c.family = survey_family(a.family);
  c.samples = a.samples;
  c.seed = a.seed;
  for (const auto& t : a.measures) c.measures.push_back(parse_measure_or_throw(t));
  if (!a.alphas.empty()) {
    c.alphas.clear();
    for (const auto& t : a.alphas) c.alphas.push_back(parse_positive(t, "exponent"));
  }
  c.compute.monogamy = a.mono;
  c.compute.alpha_c = a.alpha_c;
  c.compute.localize = a.localize;
  c.compute.localized_sum = a.lqc_sum;
  c.compute.bipartite_sum = a.bisum;
  const bool any = a.mono || a.alpha_c || a.localize || a.lqc_sum || a.bisum;
  if (!c.measures.empty() && !any) c.compute.monogamy = true;
  if (any && c.measures.empty()) throw UsageError("quantity flags need --measures");
  c.lqc_sum_alpha = a.lqc_sum_alpha;
  c.pair = parse_pair(a.pair);
  c.nodal = a.nodal - 1;
  c.bin_width = a.bin_width;
  c.workers = a.workers;
  c.localize.restarts = a.restarts;
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

void echo_survey(const SurveyConfig& c, const SurveyArgs& a, std::ostream& err) {
  err << "config: verb=survey family=" << family_label(c.family) << " n=" << num_qubits(c.family);
  if (a.family.given(a.family.r_opt)) err << " r=" << a.family.r;
  if (a.family.given(a.family.alpha2_opt)) err << " alpha2=" << format_real(a.family.alpha2);
  err << " samples=" << c.samples << " seed=" << c.seed << " measures=" << join_measures(c.measures)
      << " alphas=" << join_alphas(c.alphas) << " mono=" << c.compute.monogamy
      << " alpha_c=" << c.compute.alpha_c << " localize=" << c.compute.localize
      << " lqc_sum=" << c.compute.localized_sum << " lqc_sum_alpha=" << format_alpha(c.lqc_sum_alpha)
      << " bisum=" << c.compute.bipartite_sum << " pair=" << pair_text(c.pair) << " nodal=" << c.nodal + 1
      << " bin_width=" << format_real(c.bin_width) << " restarts=" << c.localize.restarts
      << " workers=" << c.workers << " out=" << (a.out_path.empty() ? "-" : a.out_path) << '\n';
}

void summarize(const SurveyConfig& c, const std::vector<SurveyRecord>& records, std::ostream& err) {
  const auto g = ggm_column(records);
  const auto s = summary_stats(g);
  err << "summary: samples=" << s.count << " ggm_mean=" << format_real(s.mean) << " ggm_sd=" << format_real(s.sd)
      << " ggm_min=" << format_real(s.min) << " ggm_max=" << format_real(s.max) << '\n';
  for (auto m : c.measures) {
    const std::string key(measure_key(m));
    if (c.compute.monogamy) {
      for (double a : c.alphas) {
        std::uint64_t viol = 0;
        for (const auto& r : records) viol += *r.score(m, a) < kViolationThreshold;
        const auto crit = critical_ggm(records, m, a);
        err << "summary: " << key << "_score_a" << format_alpha(a) << " nonmonogamous=" << viol << '/'
            << records.size() << " critical_ggm=" << format_real(crit.value) << '\n';
      }
    }
    if (c.compute.localize) {
      for (double a : c.alphas) {
        std::vector<double> v;
        for (const auto& r : records) v.push_back(*r.localized(m, a));
        const auto ls = summary_stats(v);
        err << "summary: " << key << "_lqc_pair" << pair_text(c.pair) << "_a" << format_alpha(a)
            << " mean=" << format_real(ls.mean) << " max=" << format_real(ls.max) << '\n';
      }
    }
    if (c.compute.localized_sum) {
      std::vector<double> v;
      for (const auto& r : records) v.push_back(*r.localized_total(m));
      const auto ls = summary_stats(v);
      err << "summary: " << key << "_lqc_sum mean=" << format_real(ls.mean) << " max=" << format_real(ls.max)
          << '\n';
    }
  }
}

void write_histogram(const std::vector<SurveyRecord>& records, double bin_width, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  const auto h = histogram(ggm_column(records), bin_width);
  f << "bin_lo,bin_hi,count,frequency\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    f << format_real(h.bin_edges[b]) << ',' << format_real(h.bin_edges[b + 1]) << ',' << h.counts[b] << ','
      << format_real(h.frequencies[b]) << '\n';
  }
}

int run_survey_cmd(const SurveyArgs& a, std::ostream& out, std::ostream& err) {
  const SurveyConfig c = survey_config(a);
  echo_survey(c, a, err);
  std::vector<SurveyRecord> records;
  records.reserve(static_cast<std::size_t>(c.samples));
  const RecordSink keep = [&](const SurveyRecord& r) { records.push_back(r); };
  if (a.out_path.empty()) {
    write_survey_csv(c, out, keep);
  } else {
    std::ofstream f(a.out_path);
    if (!f) throw std::runtime_error("cannot open '" + a.out_path + "' for writing");
    write_survey_csv(c, f, keep);
    if (!f) throw std::runtime_error("write to '" + a.out_path + "' failed");
  }
  summarize(c, records, err);
  if (!a.hist_path.empty()) write_histogram(records, c.bin_width, a.hist_path);
  return kExitOk;
}

// -------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string target;
  std::uint64_t samples = 0;
  ReproduceOptions opts;
  CLI::Option* samples_opt = nullptr;
};

void add_reproduce(CLI::App& app, ReproduceArgs& a) {
  auto* cmd = app.add_subcommand("reproduce", "Rerun a published table at desk scale");
  cmd->add_option("target", a.target, "table1..table5 or prop1")
      ->required()
      ->check(CLI::IsMember(reproduce_targets()));
  a.samples_opt = cmd->add_option("--samples", a.samples, "Samples per row (overrides defaults)")
                      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a.opts.seed, "Master seed")->capture_default_str();
  a.opts.workers = default_workers();
  cmd->add_option("--workers", a.opts.workers, "Worker threads")->capture_default_str();
  cmd->add_option("--max-n", a.opts.max_n, "Skip rows with more qubits")->capture_default_str();
}

int run_reproduce_cmd(ReproduceArgs& a, std::ostream& out, std::ostream& err) {
  if (a.samples_opt->count() > 0) a.opts.samples = a.samples;
  if (a.opts.workers < 1) throw UsageError("--workers must be >= 1");
  if (a.opts.max_n < 3) throw UsageError("--max-n must be >= 3");
  err << "config: verb=reproduce target=" << a.target << " samples="
      << (a.opts.samples ? std::to_string(*a.opts.samples) : "default") << " seed=" << a.opts.seed
      << " workers=" << a.opts.workers << " max_n=" << a.opts.max_n << '\n';
  const auto rows = reproduce(a.target, a.opts, err);
  print_comparison(a.target, rows, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multipartite correlations: GGM, monogamy scores and localizable correlations", "qcorr"};
  app.require_subcommand(1);
  MeasureArgs measure;
  SurveyArgs survey;
  ReproduceArgs reproduce;
  add_measure(app, measure);
  add_survey(app, survey);
  add_reproduce(app, reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("measure")) return run_measure(measure, out, err);
    if (app.got_subcommand("survey")) return run_survey_cmd(survey, out, err);
    return run_reproduce_cmd(reproduce, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace qcorr::cli
