#include "projlat/suite.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "projlat/lattice.hpp"
#include "projlat/random.hpp"
#include "projlat/two_projection.hpp"

namespace projlat {

std::string library_version() { return "projlat 1.0.0"; }

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"halmos", "isoclinic", "gleason", "lipschitz", "dye",
                                              "equivariance", "wigner", "i2-counterexample", "dyadic", "faults"};
  return names;
}

const std::vector<std::string>& paper_anchors() {
  static const std::vector<std::string> anchors{
      "Def. 2.1", "Prop. 2.2", "Prop. 2.3", "Prop. 2.4", "Eq. (2)",  "Prop. 2.5",          "Thm. 2.6",
      "Lemma 2.7", "Def. 3.1", "Def. 3.2",  "Prop. 3.3", "Prop. 3.5", "Prop. 3.6",          "Prop. 3.7",
      "Prop. 3.8", "Thm. 3.9", "Cor. 3.10", "Prop. 4.1", "Thm. 4.2",  "COrtho definition", "Eq. (1)",
      "Thm. 4.3",  "Def. 4.4", "Thm. 4.5"};
  return anchors;
}

// ---------------------------------------------------------------- config

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::Parse, "config: " + what); }

bool needs_size_two_free(const std::string& suite) {
  return suite == "gleason" || suite == "lipschitz" || suite == "dye" || suite == "equivariance" || suite == "faults";
}

}  // namespace

SuiteConfig config_from_json(const Json& j) {
  if (!j.is_object()) config_error("top level must be an object");
  SuiteConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      if (!value.is_number_unsigned()) config_error("\"seed\" must be a non-negative integer");
      c.seed = value.get<std::uint64_t>();
    } else if (key == "algebra") {
      if (value.is_null()) continue;
      try {
        c.algebra = value.is_string() ? parse_algebra_spec(value.get<std::string>()) : algebra_from_json(value);
      } catch (const Error& e) {
        config_error(std::string("\"algebra\": ") + e.what());
      }
    } else if (key == "suites") {
      if (!value.is_array()) config_error("\"suites\" must be an array of names");
      for (const auto& s : value) {
        if (!s.is_string()) config_error("\"suites\" must be an array of names");
        c.suites.push_back(s.get<std::string>());
      }
    } else if (key == "samples") {
      if (!value.is_number_integer() || value.get<long long>() < 1 || value.get<long long>() > 1000000) {
        config_error("\"samples\" must be an integer in [1, 1000000]");
      }
      c.samples = value.get<int>();
    } else if (key == "tol_scale") {
      if (!value.is_number() || !(value.get<double>() > 0.0) || !std::isfinite(value.get<double>())) {
        config_error("\"tol_scale\" must be a positive number");
      }
      c.tol_scale = value.get<double>();
    } else if (key == "out") {
      if (!value.is_string()) config_error("\"out\" must be a string");
      c.out = value.get<std::string>();
    } else {
      config_error("unknown key \"" + key + "\"");
    }
  }
  return c;
}

namespace {

std::vector<std::string> resolved_suites(const SuiteConfig& c) {
  if (c.suites.empty()) return known_suites();
  std::vector<std::string> out;
  for (const auto& s : c.suites) {
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end()) {
      throw Error(ErrorCode::Usage, "unknown suite '" + s + "'");
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace

Json config_echo(const SuiteConfig& config) {
  Json j;
  j["seed"] = config.seed;
  j["algebra"] = config.algebra ? Json(config.algebra->block_dims()) : Json(nullptr);
  j["suites"] = resolved_suites(config);
  j["samples"] = config.samples;
  j["tol_scale"] = config.tol_scale;
  return j;
}

// ---------------------------------------------------------------- report

bool Report::all_pass() const {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass(); });
}

Json Report::to_json() const {
  Json recs = Json::array();
  for (const auto& r : records) {
    Json j;
    j["check_id"] = r.check_id;
    j["paper_ref"] = r.paper_ref;
    j["n_trials"] = r.n_trials;
    j["worst_residual"] = r.worst_residual;
    j["tolerance"] = r.tolerance;
    j["criterion"] = r.expect_above ? "above" : "at_most";
    j["pass"] = r.pass();
    if (!r.witness.empty()) {
      Json inputs = Json::array();
      for (const auto& w : r.witness) inputs.push_back(projlat::to_json(w));
      j["witness"] = {{"inputs", std::move(inputs)}};
    }
    if (!r.note.empty()) j["note"] = r.note;
    recs.push_back(std::move(j));
  }
  return Json{{"version", library_version()}, {"config", config}, {"all_pass", all_pass()}, {"records", recs}};
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

// ---------------------------------------------------------------- suites

namespace {

constexpr double kFailed = std::numeric_limits<double>::max();

std::uint64_t stream_of(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

class Recorder {
 public:
  Recorder(std::string id, std::string ref, double tolerance, bool expect_above = false) {
    rec_.check_id = std::move(id);
    rec_.paper_ref = std::move(ref);
    rec_.tolerance = tolerance;
    rec_.expect_above = expect_above;
    rec_.worst_residual = expect_above ? kFailed : 0.0;
  }

  void observe(double residual, std::vector<Element> witness, int trials = 1) {
    rec_.n_trials += trials;
    const bool worse = rec_.expect_above ? residual < rec_.worst_residual : residual > rec_.worst_residual;
    if (worse || !seen_) {
      rec_.worst_residual = residual;
      rec_.witness = std::move(witness);
      seen_ = true;
    }
  }

  void absorb(const ResidualRecord& r) { observe(r.worst, r.witness, r.trials); }

  void fail(const std::string& why, std::vector<Element> witness) {
    observe(rec_.expect_above ? 0.0 : kFailed, std::move(witness));
    if (rec_.note.empty()) rec_.note = why;
  }

  void note(std::string text) { rec_.note = std::move(text); }

  CheckRecord finish() {
    if (!seen_) rec_.worst_residual = 0.0;
    if (rec_.pass() && !rec_.expect_above) rec_.witness.clear();
    return std::move(rec_);
  }

 private:
  CheckRecord rec_;
  bool seen_ = false;
};

struct Context {
  const SuiteConfig& config;
  std::uint64_t stream;

  Rng trial(int t) const { return Rng(mix_seed(mix_seed(config.seed, stream), static_cast<std::uint64_t>(t))); }
  std::uint64_t sub_seed(int t) const { return mix_seed(mix_seed(config.seed, stream ^ 0xa5a5a5a5ULL), t); }
  double tol(double base) const { return base * config.tol_scale; }
  int trials(int divisor, int minimum) const { return std::max(minimum, config.samples / divisor); }

  Algebra algebra(Rng& rng, int lo, int hi, int max_blocks, bool exclude_two) const {
    if (config.algebra) return *config.algebra;
    return random_algebra(rng, lo, hi, max_blocks, exclude_two);
  }
};

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(rng.uniform_int(0, int(i) - 1))]);
  return p;
}

LatticeMorphism random_morphism(const Algebra& alg, Rng& rng) {
  const Element u = random_unitary(alg, rng);
  const bool transpose = rng.uniform() < 0.5;
  return make_morphism_from_unitary(u, transpose, random_permutation(alg.num_blocks(), rng));
}

using Sink = std::vector<CheckRecord>;

void halmos_suite(const Context& cx, Sink& out) {
  Recorder round("halmos.roundtrip", "Prop. 2.4", cx.tol(1e-9));
  Recorder rp("halmos.rp_identity", "Prop. 2.3", cx.tol(1e-8));
  Recorder halving("halving.partition", "Lemma 2.7", cx.tol(1e-9));
  for (int t = 0; t < cx.config.samples; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 2, 16, 2, false);
    const Projection e = random_projection(alg, rng);
    const Projection f = random_projection(alg, rng);
    const TwoProjDecomposition d = five_part_decomposition(e, f);
    try {
      const HalmosForm form = halmos_form(d.generic_e, d.generic_f, d.generic_support);
      const auto [ge, gf] = reconstruct_pair(form);
      const Element er = d.corner_ef.element() + d.corner_ef_perp.element() + ge;
      const Element fr = d.corner_ef.element() + d.corner_perp_f.element() + gf;
      round.observe(std::max(operator_norm(er - e.element()), operator_norm(fr - f.element())), {e, f});
    } catch (const Error& err) {
      round.fail(err.what(), {e, f});
    }
    if (total_rank(d.generic_e) > 0) {
      const Element x = (d.generic_support.element() - d.generic_e.element()) * d.generic_f.element() *
                        d.generic_e.element();
      rp.observe(operator_norm(range_projection(x).element() - d.generic_e.element()), {d.generic_e, d.generic_f});
    }

    const Halving h = halve(e);
    double r = operator_norm(h.p.element() + h.q.element() + h.r.element() - e.element());
    r = std::max(r, operator_norm(h.p.element() * h.q.element()));
    const bool ranks_ok = equivalent(h.p, h.q);
    const auto rr = block_ranks(h.r);
    const bool abelian = std::all_of(rr.begin(), rr.end(), [](int k) { return k <= 1; });
    if (!ranks_ok || !abelian) {
      halving.fail("halves not equivalent or remainder not abelian", {e});
    } else {
      halving.observe(r, {e});
    }
  }
  out.push_back(round.finish());
  out.push_back(rp.finish());
  out.push_back(halving.finish());
}

void isoclinic_suite(const Context& cx, Sink& out) {
  Recorder def("isoclinic.construction", "Thm. 2.6", cx.tol(1e-8));
  Recorder sin("isoclinic.sin_alpha", "Prop. 2.2", cx.tol(1e-8));
  int blocks = 0;
  int out_of_range = 0;
  int disagreements = 0;
  for (int t = 0; t < cx.config.samples; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 2, 12, 2, false);
    Projection e, f;
    for (int attempt = 0;; ++attempt) {
      std::vector<int> ranks;
      for (int n : alg.block_dims()) ranks.push_back(n >= 2 ? rng.uniform_int(1, n / 2) : 0);
      e = random_projection(alg, ranks, rng);
      f = random_perturbation(e, rng.uniform(0.05, 1.2), rng);
      if (operator_norm(e.element() - f.element()) < 1.0 - 1e-6 && is_zero(meet(e, f))) break;
      if (attempt == 50) throw Error(ErrorCode::Internal, "no admissible pair after 50 draws");
    }
    try {
      const IsoclinicResult iso = isoclinic_projection(e, f);
      const double r = std::max(isoclinic_residuals(e, iso.g, iso.alpha).worst(),
                                isoclinic_residuals(f, iso.g, iso.alpha).worst());
      def.observe(r, {e, f});
      const double s = std::sin(iso.alpha);
      sin.observe(std::max(std::abs(operator_norm(e.element() - iso.g.element()) - s),
                           std::abs(operator_norm(f.element() - iso.g.element()) - s)),
                  {e, f});
      blocks += iso.diagnostics.blocks;
      out_of_range += iso.diagnostics.printed_out_of_range;
      disagreements += iso.diagnostics.printed_disagreements;
    } catch (const Error& err) {
      def.fail(err.what(), {e, f});
      sin.fail(err.what(), {e, f});
    }
  }
  std::ostringstream os;
  os << "printed phase formula: argument outside [-1,1] in " << out_of_range << " of " << blocks
     << " canonical blocks, disagrees with the constraint-solved phase in " << disagreements;
  def.note(os.str());
  out.push_back(def.finish());
  out.push_back(sin.finish());
}

void gleason_suite(const Context& cx, Sink& out) {
  Recorder recon("gleason.reconstruction", "Thm. 3.9", cx.tol(1e-8));
  Recorder add("gleason.additivity", "Def. 3.2", cx.tol(1e-9));
  Recorder routes("gleason.routes_agree", "Prop. 3.3", cx.tol(1e-9));
  Recorder lin("gleason.linearity", "Cor. 3.10", cx.tol(1e-8));
  const int trials = cx.trials(4, 5);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 8, 2, true);
    const Element hidden = random_element(alg, rng);
    const Measure rho = make_density_measure(hidden);
    const AuditOptions opts{cx.sub_seed(t), 20};

    const DensityReconstruction rec = reconstruct_density(rho, alg, cx.sub_seed(t), 50);
    recon.observe(std::max(operator_norm(rec.density - hidden), rec.residual), {hidden});

    const AdditivityAudit audit = additivity_audit(rho, opts);
    std::vector<Element> pair;
    if (audit.witness) pair = {audit.witness->first, audit.witness->second};
    add.observe(audit.worst / rho.norm_bound, pair, audit.pairs);

    const QuasiLinearFunctional mu = extend_measure(rho, opts);
    const Element x = random_hermitian(alg, rng);
    routes.observe(std::abs(mu(x) - dyadic_functional_value(rho, x, 52)) / mu.norm, {x});

    const Projection e = random_projection(alg, rng);
    const Projection f = random_projection(alg, rng);
    lin.observe(std::abs(mu(e.element() + f.element()) - mu(e) - mu(f)) / mu.norm, {e, f});
  }
  out.push_back(recon.finish());
  out.push_back(add.finish());
  out.push_back(routes.finish());
  out.push_back(lin.finish());
}

void lipschitz_suite(const Context& cx, Sink& out) {
  Recorder ratio("lipschitz.ratio", "Prop. 3.8", 2.0 + cx.tol(1e-6));
  const int trials = cx.trials(10, 5);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 6, 2, true);
    Measure rho;
    switch (t % 3) {
      case 0: rho = make_tracial_measure(alg); break;
      case 1: rho = make_density_measure(random_density(alg, rng)); break;
      default: rho = make_density_measure(random_element(alg, rng)); break;
    }
    const QuasiLinearFunctional mu = extend_measure(rho, {cx.sub_seed(t), 20});
    std::vector<std::pair<Projection, Projection>> pairs;
    for (int i = 0; i < 10; ++i) {
      const Projection e = random_projection(alg, rng);
      const Projection f = i % 2 == 0 ? random_perturbation(e, std::pow(10.0, rng.uniform(-4.0, 0.2)), rng)
                                      : random_projection(alg, rng);
      pairs.emplace_back(e, f);
    }
    const LipschitzAudit audit = lipschitz_audit(mu, pairs);
    std::vector<Element> w;
    if (audit.witness) w = {audit.witness->first, audit.witness->second};
    ratio.observe(audit.worst_ratio, w, audit.evaluated);
  }
  out.push_back(ratio.finish());
}

void dye_suite(const Context& cx, Sink& out) {
  Recorder cortho("dye.cortho", "COrtho definition", cx.tol(1e-8));
  Recorder rep("dye.representation", "Prop. 3.5", cx.tol(1e-8));
  Recorder add("dye.additivity", "Thm. 4.2", cx.tol(1e-8));
  Recorder jordan("dye.jordan", "Prop. 4.1", cx.tol(1e-8));
  Recorder bij("dye.bijective", "Thm. 4.3", cx.tol(1e-8));
  Recorder chains("dye.join_continuity", "Def. 4.4", cx.tol(1e-8));
  const int trials = cx.trials(20, 3);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 6, 2, true);
    const LatticeMorphism phi = random_morphism(alg, rng);
    const AuditOptions opts{cx.sub_seed(t), 10};
    for (const auto& r : cortho_audit(phi, opts).records) cortho.absorb(r);
    const LinearMapOnAlgebra ext = spectral_extension(phi);
    const AuditReport probe = additivity_probe(phi, ext, opts);
    add.absorb(*probe.find("additivity"));
    rep.absorb(*probe.find("representation"));
    for (const auto& r : jordan_audit(ext, opts).records) jordan.absorb(r);
    bij.observe(std::abs(ext.condition_number() - 1.0), {});
    for (const auto& r : join_continuity_audit(phi, sample_chains(alg, {cx.sub_seed(t), 3})).records) {
      chains.absorb(r);
    }
  }
  for (Recorder* r : {&add, &bij, &chains, &cortho, &jordan, &rep}) out.push_back(r->finish());
}

void equivariance_suite(const Context& cx, Sink& out) {
  Recorder eq("equivariance.symmetric_conjugation", "Eq. (1)", cx.tol(1e-8));
  const int trials = cx.trials(20, 3);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 6, 2, true);
    eq.absorb(equivariance_check(random_morphism(alg, rng), {cx.sub_seed(t), 20}));
  }
  out.push_back(eq.finish());
}

void wigner_suite(const Context& cx, Sink& out) {
  Recorder fid("wigner.fidelity", "Thm. 4.3", cx.tol(1e-8));
  Recorder flag("wigner.flag", "Thm. 4.3", 0.0);
  Recorder unitary("wigner.unitary", "Thm. 4.3", cx.tol(1e-8));
  const int trials = cx.trials(10, 5);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 8, 1, false);
    const Element u = random_unitary(alg, rng);
    const bool transpose = rng.uniform() < 0.5;
    const auto perm = random_permutation(alg.num_blocks(), rng);
    const LatticeMorphism phi = make_morphism_from_unitary(u, transpose, perm);
    try {
      const WignerResult w = wigner_reconstruct(phi, {cx.sub_seed(t), 20});
      fid.observe(1.0 - w.fidelity, {u});
      bool flags_ok = w.block_permutation == perm;
      double dev = 0.0;
      for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
        flags_ok = flags_ok && w.block_antiunitary[k] == transpose;
        const Matrix& got = w.unitary.block(k);
        const Matrix& want = u.block(k);
        const Complex overlap = (want.adjoint() * got).trace();
        const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
        dev = std::max(dev, (got - phase * want).norm());
      }
      flag.observe(flags_ok ? 0.0 : 1.0, {u});
      unitary.observe(dev, {u});
    } catch (const Error& err) {
      fid.fail(err.what(), {u});
      flag.fail(err.what(), {u});
      unitary.fail(err.what(), {u});
    }
  }
  out.push_back(fid.finish());
  out.push_back(flag.finish());
  out.push_back(unitary.finish());
}

void i2_suite(const Context& cx, Sink& out) {
  Recorder add("i2.additivity", "Def. 3.2", cx.tol(1e-12));
  Recorder fit("i2.linear_fit", "Thm. 3.9", 0.05, true);
  const Algebra m2({2});
  const int trials = cx.trials(20, 5);
  for (int t = 0; t < trials; ++t) {
    const Measure rho = make_m2_nonlinear_measure(cx.sub_seed(t), m2);
    const AdditivityAudit audit = additivity_audit(rho, {cx.sub_seed(t), 100});
    std::vector<Element> pair;
    if (audit.witness) pair = {audit.witness->first, audit.witness->second};
    add.observe(audit.worst, pair, audit.pairs);
    const DensityReconstruction rec = reconstruct_density(rho, m2, cx.sub_seed(t), 100);
    std::vector<Element> w{rec.density};
    if (rec.worst_projection) w.push_back(*rec.worst_projection);
    fit.observe(rec.residual, std::move(w));
  }
  out.push_back(add.finish());
  out.push_back(fit.finish());
}

void dyadic_suite(const Context& cx, Sink& out) {
  constexpr int kDepth = 40;
  Recorder trunc("dyadic.truncation", "Prop. 3.6", 0.0);
  double tolerance = 0.0;
  for (int t = 0; t < cx.config.samples; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 1, 8, 2, false);
    tolerance = std::max(tolerance, cx.tol(64.0 * alg.max_block_dim() * DBL_EPSILON));
    const Element x = 0.5 * (random_hermitian(alg, rng) + Element::identity(alg));
    const auto digits = dyadic_decomposition(x, kDepth);
    Element partial = Element::zero(alg);
    double excess = 0.0;
    for (int n = 1; n <= kDepth; ++n) {
      partial += std::ldexp(1.0, -n) * digits[static_cast<std::size_t>(n - 1)].element();
      excess = std::max(excess, operator_norm(x - partial) - std::ldexp(1.0, -n));
    }
    trunc.observe(excess, {x});
  }
  CheckRecord rec = trunc.finish();
  rec.tolerance = tolerance;
  if (rec.pass()) rec.witness.clear();
  out.push_back(std::move(rec));
}

void faults_suite(const Context& cx, Sink& out) {
  constexpr double kCaught = 1e-3;
  Recorder flipped("faults.flipped_projection", "COrtho definition", kCaught, true);
  Recorder probe("faults.additivity_probe", "Thm. 4.2", kCaught, true);
  Recorder chain("faults.join_continuity", "Def. 4.4", kCaught, true);
  Recorder measure("faults.nonadditive_measure", "Def. 3.2", kCaught, true);
  Recorder jordan("faults.non_jordan_map", "Prop. 4.1", 0.1, true);
  const int trials = cx.trials(50, 2);
  for (int t = 0; t < trials; ++t) {
    Rng rng = cx.trial(t);
    const Algebra alg = cx.algebra(rng, 3, 5, 2, true);
    const AuditOptions opts{cx.sub_seed(t), 10};
    const LatticeMorphism fault = make_fault_morphism(random_morphism(alg, rng), frame_projections(alg).front());

    const AuditReport c = cortho_audit(fault, opts);
    const auto worst = std::max_element(c.records.begin(), c.records.end(),
                                        [](const auto& a, const auto& b) { return a.worst < b.worst; });
    flipped.observe(worst->worst, worst->witness);
    probe.absorb(*additivity_probe(fault, spectral_extension(fault), opts).find("additivity"));
    const AuditReport jc = join_continuity_audit(fault, sample_chains(alg, {cx.sub_seed(t), 2}));
    const auto worst_jc = std::max_element(jc.records.begin(), jc.records.end(),
                                           [](const auto& a, const auto& b) { return a.worst < b.worst; });
    chain.observe(worst_jc->worst, worst_jc->witness);

    Measure bad;
    bad.algebra = alg;
    const double n = alg.rep_dim();
    bad.evaluate = [n](const Projection& p) {
      const double share = p.element().trace().real() / n;
      return Complex(share * share, 0.0);
    };
    const AdditivityAudit audit = additivity_audit(bad, opts);
    std::vector<Element> pair;
    if (audit.witness) pair = {audit.witness->first, audit.witness->second};
    measure.observe(audit.worst, pair, audit.pairs);

    const LinearMapOnAlgebra skew = LinearMapOnAlgebra::from_function(alg, alg, [n](const Element& x) {
      return x + (x.trace() / n) * Element::identity(x.algebra());
    });
    jordan.absorb(*jordan_audit(skew, opts).find("square"));
  }
  for (Recorder* r : {&probe, &chain, &flipped, &measure, &jordan}) out.push_back(r->finish());
}

}  // namespace

Report run_suite(const SuiteConfig& config) {
  const auto suites = resolved_suites(config);
  if (config.samples < 1) throw Error(ErrorCode::Usage, "samples must be positive");
  if (!(config.tol_scale > 0.0)) throw Error(ErrorCode::Usage, "tol_scale must be positive");
  if (config.algebra && config.algebra->has_type_I2_summand()) {
    for (const auto& s : suites) {
      if (needs_size_two_free(s)) throw Error(ErrorCode::Usage, "suite '" + s + "' needs an algebra without M2 blocks");
    }
  }

  static const std::map<std::string, std::function<void(const Context&, Sink&)>> table{
      {"halmos", halmos_suite}, {"isoclinic", isoclinic_suite}, {"gleason", gleason_suite},
      {"lipschitz", lipschitz_suite}, {"dye", dye_suite}, {"equivariance", equivariance_suite},
      {"wigner", wigner_suite}, {"i2-counterexample", i2_suite}, {"dyadic", dyadic_suite},
      {"faults", faults_suite}};

  Report report;
  report.config = config_echo(config);
  for (const auto& s : suites) table.at(s)(Context{config, stream_of(s)}, report.records);
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.check_id < b.check_id; });
  return report;
}

// ---------------------------------------------------------------- gen_instance

namespace {

std::map<std::string, std::string> spec_options(std::istringstream& in, const std::set<std::string>& allowed,
                                                const std::string& kind) {
  std::map<std::string, std::string> opts;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::Usage, "expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (!allowed.count(key)) throw Error(ErrorCode::Usage, "'" + kind + "' does not take '" + key + "'");
    opts[key] = token.substr(eq + 1);
  }
  return opts;
}

int to_int(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Usage, "'" + key + "' must be an integer, got '" + s + "'");
}

std::vector<double> to_doubles(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used == item.size()) continue;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::Usage, "'" + key + "' must be a comma-separated list of numbers");
  }
  if (out.empty()) throw Error(ErrorCode::Usage, "'" + key + "' is empty");
  return out;
}

Algebra algebra_option(const std::map<std::string, std::string>& opts, const std::string& fallback) {
  const auto it = opts.find("n");
  return parse_algebra_spec(it == opts.end() ? fallback : it->second);
}

}  // namespace

std::vector<GeneratedFile> gen_instance(std::uint64_t seed, const std::string& spec) {
  std::istringstream in(spec);
  std::string kind;
  if (!(in >> kind)) throw Error(ErrorCode::Usage, "empty instance spec");
  Rng rng(mix_seed(seed, stream_of(kind)));
  std::vector<GeneratedFile> files;

  if (kind == "halmos-pair") {
    const auto opts = spec_options(in, {"a", "n"}, kind);
    if (!opts.count("a")) throw Error(ErrorCode::Usage, "halmos-pair needs a=<values>");
    std::vector<double> a = to_doubles(opts.at("a"), "a");
    const int n = opts.count("n") ? to_int(opts.at("n"), "n") : 2 * static_cast<int>(a.size());
    if (n < 2 || n % 2 != 0) throw Error(ErrorCode::Usage, "halmos-pair needs an even n ≥ 2");
    if (a.size() == 1) a.assign(static_cast<std::size_t>(n / 2), a.front());
    if (static_cast<int>(a.size()) != n / 2) throw Error(ErrorCode::Usage, "halmos-pair needs n/2 a-values");
    for (double v : a)
      if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::Usage, "a-values must lie in (0, 1)");
    const auto [e, f] = halmos_pair(a);
    files.push_back({"algebra.json", to_json(e.algebra())});
    files.push_back({"pair.json", Json{{"a_values", a}, {"e", to_json(e.element())}, {"f", to_json(f.element())}}});
  } else if (kind == "random-proj") {
    const auto opts = spec_options(in, {"n", "rank"}, kind);
    const Algebra alg = algebra_option(opts, "4");
    std::vector<int> ranks;
    for (int n : alg.block_dims()) {
      const int r = opts.count("rank") ? to_int(opts.at("rank"), "rank") : n / 2;
      if (r < 0 || r > n) throw Error(ErrorCode::Usage, "rank must lie in [0, n]");
      ranks.push_back(r);
    }
    files.push_back({"algebra.json", to_json(alg)});
    files.push_back({"projection.json", to_json(random_projection(alg, ranks, rng).element())});
  } else if (kind == "density" || kind == "tracial") {
    const auto opts = spec_options(in, {"n"}, kind);
    const Algebra alg = algebra_option(opts, "3");
    files.push_back({"algebra.json", to_json(alg)});
    Json m = kind == "density" ? Json{{"kind", "density"}, {"T", to_json(random_density(alg, rng))}}
                               : Json{{"kind", "tracial"}, {"block_dims", alg.block_dims()}};
    files.push_back({"measure.json", std::move(m)});
  } else if (kind == "m2-nonlinear") {
    spec_options(in, {}, kind);
    files.push_back({"algebra.json", to_json(Algebra({2}))});
    files.push_back({"measure.json", Json{{"kind", "m2_nonlinear"}, {"seed", seed}}});
  } else if (kind == "unitary-morphism" || kind == "fault-morphism") {
    const auto opts = spec_options(in, {"n", "transpose"}, kind);
    const Algebra alg = algebra_option(opts, "3");
    const bool transpose = opts.count("transpose") && to_int(opts.at("transpose"), "transpose") != 0;
    Json m{{"kind", "unitary"}, {"U", to_json(random_unitary(alg, rng))}, {"transpose", transpose}};
    if (kind == "fault-morphism") {
      m = Json{{"kind", "fault"}, {"base", std::move(m)}, {"break_at", to_json(frame_projections(alg).front().element())}};
    }
    files.push_back({"algebra.json", to_json(alg)});
    files.push_back({"morphism.json", std::move(m)});
  } else {
    throw Error(ErrorCode::Usage, "unknown instance kind '" + kind + "'");
  }
  return files;
}

}  // namespace projlat
