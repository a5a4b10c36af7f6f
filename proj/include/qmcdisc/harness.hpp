#pragma once

// Bound-regression suite: every inequality and two-sided estimate of the
// catalog, checked at finite parameters with exact arithmetic. Real-valued
// quantities (logarithms) appear only in report-only traces.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corebase.hpp"
#include "discrepancy.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "netverify.hpp"
#include "psi.hpp"
#include "random.hpp"
#include "walsh2.hpp"

namespace qmc {

struct CheckInstance {
  json params = json::object();
  json computed = json::object();
  json bound = json::object();
  bool pass = true;
};

struct BoundCheck {
  enum class Kind { Assert, ReportOnly };

  std::string name;
  std::string anchor;  // the statement being checked
  Kind kind = Kind::Assert;
  std::vector<CheckInstance> instances;
  bool skipped = false;
  std::string skip_reason;
  json notes = json::object();

  bool pass() const {
    if (kind == Kind::ReportOnly) return true;
    for (const auto& i : instances)
      if (!i.pass) return false;
    return true;
  }

  json to_json() const {
    json inst = json::array();
    for (const auto& i : instances)
      inst.push_back({{"check", name}, {"params", i.params}, {"computed", i.computed}, {"bound", i.bound}, {"pass", i.pass}});
    json j{{"check", name},
           {"anchor", anchor},
           {"kind", kind == Kind::Assert ? "assert" : "report-only"},
           {"pass", pass()},
           {"instances", std::move(inst)}};
    if (skipped) j["skipped"] = {{"reason", skip_reason}, {"instances_completed", instances.size()}};
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }
};

struct SuiteConfig {
  std::vector<std::string> select{"all"};  // check names, or "all"; empty selects nothing
  std::size_t m_max = 10;
  std::uint64_t n_max = 512;
  std::uint64_t seed = 20240601;
  std::size_t samples = 100;
  double time_budget_s = 0;  // 0: unlimited

  json to_json() const {
    return {{"select", select}, {"m_max", m_max}, {"n_max", n_max}, {"seed", seed}, {"samples", samples}, {"time_budget_s", time_budget_s}};
  }
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<BoundCheck> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return true;
  }
  bool any_skipped() const {
    for (const auto& c : checks)
      if (c.skipped) return true;
    return false;
  }
  const BoundCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  json to_json() const {
    json cs = json::array();
    for (const auto& c : checks) cs.push_back(c.to_json());
    return {{"config", config.to_json()}, {"pass", pass()}, {"skipped", any_skipped()}, {"checks", std::move(cs)}};
  }
};

namespace harness {

inline const double kLn2 = std::log(2.0);
inline const double kLn3 = std::log(3.0);

/// Named real constants of the report-only traces.
inline double c_sob_lower() { return 1.0 / (24.0 * kLn2 * kLn2); }
inline double c_sob_upper() { return 1.0 / (12.0 * kLn2 * kLn2); }
inline double c_all_ones_lower() { return 1.0 / (5.0 * kLn2); }
inline double c_all_ones_upper() { return 5099.0 / (22528.0 * kLn2); }
inline double c_rho_base3() { return 1.0 / (4.0 * kLn3); }
inline double c_rho_base2() { return 1.0 / (6.0 * kLn2); }

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Membership bits of {H(H-1), ..., H^2-1 : H >= 1} for r < len.
inline std::vector<bool> faure_a_bits(std::size_t len) {
  std::vector<bool> out(len);
  for (std::size_t r = 0; r < len; ++r) out[r] = in_faure_set(r);
  return out;
}

struct NetSample {
  ModMatrix C1, C2;
  std::size_t t = 0;
  Rational dstar;
};

class Context {
 public:
  explicit Context(const SuiteConfig& cfg) : cfg_(cfg), start_(std::chrono::steady_clock::now()) {}

  const SuiteConfig& config() const { return cfg_; }

  /// Independent deterministic stream per purpose, unaffected by which checks run.
  Rng rng(const std::string& purpose) const { return Rng(cfg_.seed ^ fnv1a(purpose)); }

  bool out_of_time() const {
    if (cfg_.time_budget_s <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > cfg_.time_budget_s;
  }

  /// Marks the check skipped when the budget is spent; returns true if so.
  bool stop(BoundCheck& c) const {
    if (!out_of_time()) return false;
    c.skipped = true;
    c.skip_reason = "time budget of " + decimal4(cfg_.time_budget_s) + " s exceeded";
    return true;
  }

  static std::string key(unsigned b, const std::vector<Perm>& s) {
    std::string k = std::to_string(b) + ":";
    for (const auto& p : s) k += p.str() + ";";
    return k;
  }

  const Rational& hammersley_dstar(unsigned b, const std::vector<Perm>& s) {
    auto k = key(b, s);
    auto it = ham_dstar_.find(k);
    if (it == ham_dstar_.end()) it = ham_dstar_.emplace(k, star_disc_2d(hammersley_grid(b, s.size(), s))).first;
    return it->second;
  }

  const std::pair<Rational, Rational>& hammersley_psi(unsigned b, const std::vector<Perm>& s) {
    auto k = key(b, s);
    auto it = ham_psi_.find(k);
    if (it == ham_psi_.end()) it = ham_psi_.emplace(k, hammersley_psi_maxima(b, s)).first;
    return it->second;
  }

  /// D*(N, S_b^id) for N = 1..n (index N-1), from the exact formula.
  const std::vector<DiscReport>& vdc_id(unsigned b, std::uint64_t n) {
    auto& v = vdc_[b];
    if (v.size() < n) {
      PermSeq id = PermSeq::constant(Perm::identity(b));
      PsiCache pc;
      for (std::uint64_t N = v.size() + 1; N <= n; ++N) v.push_back(formula_disc(id, GenMatrix::zero(b), N, &pc));
    }
    return v;
  }

  /// Seeded digital nets over Z_b: even samples are (0,m,2)-nets (I, L U J),
  /// odd samples use two unrestricted random matrices.
  std::vector<NetSample>& net_pool(unsigned b, std::size_t m) {
    auto k = std::make_pair(b, m);
    auto it = pools_.find(k);
    if (it != pools_.end()) return it->second;
    Rng r = rng("net_pool/" + std::to_string(b) + "/" + std::to_string(m));
    std::vector<NetSample> pool;
    for (std::size_t i = 0; i < cfg_.samples; ++i) {
      ModMatrix C1 = i % 2 == 0 ? ModMatrix::identity(m, b) : random_matrix(r, m, b);
      ModMatrix C2 = i % 2 == 0 ? random_zero_net_matrix(r, m, b) : random_matrix(r, m, b);
      std::size_t t = digital_minimal_t({C1, C2}, m);
      pool.push_back({std::move(C1), std::move(C2), t, Rational(-1)});
    }
    return pools_.emplace(k, std::move(pool)).first->second;
  }

  /// Seeded digital (0,m,2)-nets over Z_2 with C1 = I.
  std::vector<NetSample>& zero_pool(std::size_t m) {
    auto it = zero_pools_.find(m);
    if (it != zero_pools_.end()) return it->second;
    Rng r = rng("zero_pool/" + std::to_string(m));
    std::vector<NetSample> pool;
    for (std::size_t i = 0; i < cfg_.samples; ++i) pool.push_back({ModMatrix::identity(m, 2), random_zero_net_matrix(r, m, 2), 0, Rational(-1)});
    return zero_pools_.emplace(m, std::move(pool)).first->second;
  }

  static const Rational& dstar(NetSample& s) {
    if (s.dstar < Rational(0)) s.dstar = star_disc_2d(digital_grid(s.C1, s.C2));
    return s.dstar;
  }

  /// Structured and random permutation vectors for the Hammersley checks.
  std::vector<std::pair<std::string, std::vector<Perm>>> hammersley_vectors(unsigned b, std::size_t m) {
    std::vector<std::pair<std::string, std::vector<Perm>>> out;
    const Perm id = Perm::identity(b);
    out.push_back({"id", std::vector<Perm>(m, id)});
    out.push_back({"id-tau", swap_vector(SwapKind::IdTau, m, id)});
    if (m % 2 == 0) out.push_back({"alternating", swap_vector(SwapKind::Alternating, m, id)});
    Rng r = rng("hammersley_vectors/" + std::to_string(b) + "/" + std::to_string(m));
    if (b > 2) {
      Perm s = random_perm(r, b);
      out.push_back({"sigma-sigmabar[" + s.str() + "]", swap_vector(SwapKind::SigmaSigmaBar, m, s)});
    }
    if (m <= 8)
      for (int i = 0; i < 10; ++i) {
        std::vector<Perm> v;
        for (std::size_t j = 0; j < m; ++j) v.push_back(random_perm(r, b));
        out.push_back({"random#" + std::to_string(i), std::move(v)});
      }
    return out;
  }

  std::size_t ham_m_max() const { return std::min<std::size_t>(cfg_.m_max, 12); }

 private:
  SuiteConfig cfg_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, Rational> ham_dstar_;
  std::map<std::string, std::pair<Rational, Rational>> ham_psi_;
  std::map<unsigned, std::vector<DiscReport>> vdc_;
  std::map<std::pair<unsigned, std::size_t>, std::vector<NetSample>> pools_;
  std::map<std::size_t, std::vector<NetSample>> zero_pools_;
};

inline json window(const Rational& lo, const Rational& hi) { return {{"lower", to_json(lo)}, {"upper", to_json(hi)}}; }

inline bool within(const Rational& x, const Rational& lo, const Rational& hi) { return lo <= x && x <= hi; }

// ---- upper bounds on nets -------------------------------------------------

inline void check_eqnied(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= std::min<std::size_t>(ctx.config().m_max, 10); ++m) {
      auto& pool = ctx.net_pool(b, m);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (ctx.stop(c)) return;
        const Rational& d = Context::dstar(pool[i]);
        const std::size_t t = pool[i].t;
        const std::int64_t bt = ipow(b, static_cast<unsigned>(t));
        const Rational bound = Rational(Rational(static_cast<std::int64_t>((b - 1) * (m - t) + 3), 2).floor() * bt);
        c.instances.push_back({{{"b", b}, {"m", m}, {"sample", i}, {"t", t}}, {{"dstar", to_json(d)}}, {{"value", to_json(bound)}}, d <= bound});
      }
    }
}

inline void check_eqlarpil(Context& ctx, BoundCheck& c) {
  for (std::size_t m = 1; m <= std::min<std::size_t>(ctx.config().m_max, 10); ++m) {
    auto& pool = ctx.zero_pool(m);
    const Rational bound = Rational(static_cast<std::int64_t>(m), 3) + Rational(19, 9);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (ctx.stop(c)) return;
      const Rational& d = Context::dstar(pool[i]);
      c.instances.push_back({{{"b", 2}, {"m", m}, {"sample", i}}, {{"dstar", to_json(d)}}, {{"value", to_json(bound)}}, d <= bound});
    }
  }
}

inline void check_eqdk(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= std::min<std::size_t>(ctx.config().m_max, 10); ++m) {
      auto& pool = ctx.net_pool(b, m);
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (ctx.stop(c)) return;
        const Rational& d = Context::dstar(pool[i]);
        const std::size_t t = pool[i].t;
        const Rational bt(ipow(b, static_cast<unsigned>(t)));
        const Rational& h = ctx.hammersley_dstar(b, std::vector<Perm>(m - t, Perm::identity(b)));
        const Rational bound = bt * h + bt;
        c.instances.push_back({{{"b", b}, {"m", m}, {"sample", i}, {"t", t}},
                               {{"dstar", to_json(d)}},
                               {{"value", to_json(bound)}, {"hammersley_dstar", to_json(h)}},
                               d <= bound});
      }
    }
}

// ---- one-dimensional sequences ---------------------------------------------

/// Largest D*(N, X) - D*(N, S_b^id) over N <= n for a (0,1)-sequence X.
inline void worst_sequence_instance(Context& ctx, BoundCheck& c, const Sequence& X, std::uint64_t n) {
  const auto& ref = ctx.vdc_id(X.base, n);
  Prefix1D pre;
  Rational worst(0);
  std::uint64_t at = 0;
  for (std::uint64_t N = 1; N <= n; ++N) {
    pre.add(X.exact(N - 1)[0]);
    Rational excess = *pre.report().dstar - *ref[N - 1].dstar;
    if (at == 0 || excess > worst) {
      worst = excess;
      at = N;
    }
  }
  c.instances.push_back({{{"b", X.base}, {"sequence", X.label}, {"N_max", n}},
                         {{"max_excess", to_json(worst)}, {"at_N", at}},
                         {{"value", "0/1"}},
                         worst <= Rational(0)});
}

inline void check_worst_sequence(Context& ctx, BoundCheck& c) {
  const std::uint64_t n = ctx.config().n_max;
  for (unsigned b : {2u, 3u, 5u}) {
    Rng r = ctx.rng("worst_sequence/" + std::to_string(b));
    std::vector<Sequence> seqs;
    seqs.push_back(gvdc_sequence(PermSeq::constant(Perm::swap(b))));
    if (b == 2) seqs.push_back(special_sequence(SpecialKind::X2C0, {2}));
    else seqs.push_back(special_sequence(SpecialKind::XbIdTau, {b}));
    for (int i = 0; i < 20; ++i) {
      PermSeq S = random_permseq(r, b);
      seqs.push_back(nut_sequence(S, random_strict_upper(r, b, 16)));
      seqs.back().label += "#" + std::to_string(i);
    }
    for (const auto& X : seqs) {
      if (ctx.stop(c)) return;
      worst_sequence_instance(ctx, c, X, n);
    }
  }
}

/// lower <= value <= upper at every N, recorded as the tightest slack on each side.
struct SlackTracker {
  std::string name;
  Rational min_slack;
  std::uint64_t at = 0;
  void add(const Rational& slack, std::uint64_t N) {
    if (at == 0 || slack < min_slack) {
      min_slack = slack;
      at = N;
    }
  }
  CheckInstance instance(json params) const {
    params["relation"] = name;
    return {std::move(params), {{"min_slack", to_json(min_slack)}, {"at_N", at}}, {{"value", "0/1"}}, min_slack >= Rational(0)};
  }
};

/// Two-sided comparison of a sequence X with S_b^id:
/// 2D(S) - cD <= D(X) <= 2D(S) and D*(S) - cS <= D*(X) <= D*(S) = D(S).
inline void two_sided(Context& ctx, BoundCheck& c, const Sequence& X, std::uint64_t n, const Rational& cD, const Rational& cS) {
  const auto& ref = ctx.vdc_id(X.base, n);
  std::vector<SlackTracker> tr{{"2D(S)-" + cD.str() + " <= D(X)"}, {"D(X) <= 2D(S)"}, {"D*(S)-" + cS.str() + " <= D*(X)"},
                               {"D*(X) <= D*(S)"}, {"D*(S) = D(S)"}};
  Prefix1D pre;
  for (std::uint64_t N = 1; N <= n; ++N) {
    pre.add(X.exact(N - 1)[0]);
    DiscReport x = pre.report();
    const DiscReport& s = ref[N - 1];
    tr[0].add(*x.dextreme - (Rational(2) * *s.dextreme - cD), N);
    tr[1].add(Rational(2) * *s.dextreme - *x.dextreme, N);
    tr[2].add(*x.dstar - (*s.dstar - cS), N);
    tr[3].add(*s.dstar - *x.dstar, N);
    tr[4].add(-abs(*s.dstar - *s.dextreme), N);
  }
  for (const auto& t : tr) c.instances.push_back(t.instance({{"b", X.base}, {"sequence", X.label}, {"N_max", n}}));
}

inline void check_thm2(Context& ctx, BoundCheck& c) {
  two_sided(ctx, c, special_sequence(SpecialKind::X2C0, {2}), ctx.config().n_max, Rational(5, 2), Rational(3, 2));
}

inline void check_thm3(Context& ctx, BoundCheck& c) {
  const unsigned b = 3;
  std::uint64_t n = 1;
  while (n < ctx.config().n_max) n *= b;
  two_sided(ctx, c, special_sequence(SpecialKind::XbIdTau, {b}), n, Rational(2 * (b - 1)), Rational(b - 1));
}

inline void check_thmFL(Context& ctx, BoundCheck& c) {
  const std::uint64_t n = std::min<std::uint64_t>(ctx.config().n_max, 128);
  for (unsigned b : {2u, 3u})
    for (unsigned t : {1u, 2u}) {
      Rng r = ctx.rng("thmFL/" + std::to_string(b) + "/" + std::to_string(t));
      std::vector<Sequence> inner{gvdc_sequence(PermSeq::constant(Perm::identity(b)))};
      for (int i = 0; i < 3; ++i) {
        inner.push_back(nut_sequence(random_permseq(r, b), random_strict_upper(r, b, 12)));
        inner.back().label += "#" + std::to_string(i);
      }
      const auto& ref = ctx.vdc_id(b, n);
      const std::uint64_t rep = static_cast<std::uint64_t>(ipow(b, t));
      for (const auto& in : inner) {
        if (ctx.stop(c)) return;
        SpecialParams prm{b, 1, t, &in};
        Sequence X = special_sequence(SpecialKind::RepeatT, prm);
        Prefix1D pre;
        SlackTracker tr{"D*(b^t N, X) <= b^t D*(N, S_b^id)"};
        for (std::uint64_t N = 1; N <= n; ++N) {
          for (std::uint64_t k = (N - 1) * rep; k < N * rep; ++k) pre.add(X.exact(k)[0]);
          tr.add(Rational(static_cast<std::int64_t>(rep)) * *ref[N - 1].dstar - *pre.report().dstar, N);
        }
        c.instances.push_back(tr.instance({{"b", b}, {"t", t}, {"sequence", X.label}, {"N_max", n}}));
      }
    }
}

// ---- generalized Hammersley nets ----------------------------------------------

inline void check_th1H(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= ctx.ham_m_max(); ++m)
      for (const auto& [label, s] : ctx.hammersley_vectors(b, m)) {
        if (ctx.stop(c)) return;
        const Rational& d = ctx.hammersley_dstar(b, s);
        const auto& [pp, pm] = ctx.hammersley_psi(b, s);
        const Rational res = d - max(pp, pm);
        c.instances.push_back({{{"b", b}, {"m", m}, {"sigma", label}},
                               {{"dstar", to_json(d)}, {"psi_plus_max", to_json(pp)}, {"psi_minus_max", to_json(pm)}, {"residual", to_json(res)}},
                               window(Rational(0), Rational(2)),
                               within(res, Rational(0), Rational(2))});
      }
}

inline void check_eqf1(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= ctx.ham_m_max(); ++m) {
      const Rational& did = ctx.hammersley_dstar(b, std::vector<Perm>(m, Perm::identity(b)));
      for (const auto& [label, s] : ctx.hammersley_vectors(b, m)) {
        if (ctx.stop(c)) return;
        const Rational& d = ctx.hammersley_dstar(b, s);
        c.instances.push_back({{{"b", b}, {"m", m}, {"sigma", label}},
                               {{"dstar", to_json(d)}, {"dstar_id", to_json(did)}},
                               {{"value", to_json(did + Rational(2))}},
                               d <= did + Rational(2)});
      }
    }
}

/// m for even m, m + 1 for odd m.
inline Rational even_up(std::size_t m) { return Rational(static_cast<std::int64_t>(m + m % 2)); }

inline Rational th2H_constant(unsigned b) {
  const std::int64_t B = b;
  return b % 2 ? Rational(B - 1, 8) : Rational(B * B, 8 * (B + 1));
}

inline Rational th4H_constant(unsigned b) {
  const std::int64_t B = b;
  return b % 2 ? Rational((B - 1) * (B + 2), 8 * (B + 1)) : Rational(B * B * B, 8 * (B * B + 1));
}

inline void check_th2H(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 1; m <= ctx.ham_m_max(); ++m) {
      if (ctx.stop(c)) return;
      const Rational& d = ctx.hammersley_dstar(b, swap_vector(SwapKind::IdTau, m, Perm::identity(b)));
      const Rational lead = th2H_constant(b) * even_up(m);
      const Rational res = d - lead;
      c.instances.push_back({{{"b", b}, {"m", m}},
                             {{"dstar", to_json(d)}, {"leading_term", to_json(lead)}, {"residual", to_json(res)}},
                             window(Rational(0), Rational(3)),
                             within(res, Rational(0), Rational(3))});
    }
}

inline void check_th4H(Context& ctx, BoundCheck& c) {
  c.instances.push_back({{{"b", 2}, {"relation", "leading constant equals 1/5"}},
                         {{"constant", to_json(th4H_constant(2))}},
                         {{"value", "1/5"}},
                         th4H_constant(2) == Rational(1, 5)});
  for (unsigned b : {2u, 3u})
    for (std::size_t m = 2; m <= ctx.ham_m_max(); m += 2) {
      if (ctx.stop(c)) return;
      const Rational& d = ctx.hammersley_dstar(b, swap_vector(SwapKind::Alternating, m, Perm::identity(b)));
      const Rational lead = th4H_constant(b) * Rational(static_cast<std::int64_t>(m));
      const Rational res = d - lead;
      c.instances.push_back({{{"b", b}, {"m", m}},
                             {{"dstar", to_json(d)}, {"leading_term", to_json(lead)}, {"residual", to_json(res)}},
                             window(Rational(0), Rational(3)),
                             within(res, Rational(0), Rational(3))});
    }
}

inline void check_th5H(Context& ctx, BoundCheck& c) {
  const std::size_t n_alpha = 8;
  for (unsigned b : {2u, 3u}) {
    const Perm sigma = Perm::identity(b);
    auto [ap, am] = alpha_pm(sigma, n_alpha);
    const Rational half = (ap.estimate + am.estimate) / Rational(2);
    // alpha^{id,+} is the closed-form alpha^id and alpha^{id,-} vanishes.
    const Rational half_closed = alpha_id_closed(b) / Rational(2);
    c.notes["alpha_b" + std::to_string(b)] = {{"sigma", sigma.str()},
                                              {"n_max", n_alpha},
                                              {"alpha_plus_estimate", to_json(ap.estimate)},
                                              {"alpha_minus_estimate", to_json(am.estimate)},
                                              {"alpha_plus_closed", to_json(alpha_id_closed(b))}};
    for (std::size_t m = 1; m <= ctx.ham_m_max(); ++m) {
      if (ctx.stop(c)) return;
      const Rational& d = ctx.hammersley_dstar(b, swap_vector(SwapKind::SigmaSigmaBar, m, sigma));
      const Rational res = d - half * even_up(m);
      const Rational res_closed = d - half_closed * even_up(m);
      c.instances.push_back({{{"b", b}, {"m", m}, {"sigma", sigma.str()}},
                             {{"dstar", to_json(d)}, {"residual", to_json(res)}, {"residual_closed_form", to_json(res_closed)}},
                             window(Rational(-1), Rational(4)),
                             within(res, Rational(-1), Rational(4))});
    }
  }
}

// ---- digital (0,m,2)-nets over Z_2 ------------------------------------------

inline void check_thmnew(Context& ctx, BoundCheck& c) {
  for (std::size_t m : {4u, 6u, 8u, 10u}) {
    if (m > ctx.config().m_max) break;
    Rng r = ctx.rng("thmnew/" + std::to_string(m));
    for (int i = 0; i < 20; ++i) {
      if (ctx.stop(c)) return;
      BlockNet bn(random_block_net_matrix(r, m));
      ThmNewResult res = verify_thmnew(bn);
      c.instances.push_back({{{"m", m}, {"sample", i}},
                             {{"dstar", to_json(res.dstar)}, {"witness", to_json(res.witness)}},
                             {{"value", to_json(res.bound)}},
                             res.pass});
    }
  }
  c.notes["constant"] = to_json(kThmNewConstant);
}

// ---- two-dimensional sequences (report-only traces) ----------------------

inline Rational sob_dstar(std::uint64_t N) {
  static const Sequence sob = special_sequence(SpecialKind::PascalDigital, {2, 2});
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::uint64_t n = 0; n < N; ++n) {
    auto p = sob.exact(n);
    pts.emplace_back(p[0], p[1]);
  }
  return star_disc_2d(to_grid(pts));
}

inline void check_thmup02seq(Context& ctx, BoundCheck& c) {
  // b = 2, t = 0: (1/16) b^2 (b-1)^2 / ((b^2-1) log^2 b) = 1/(12 log^2 2).
  const double k = c_sob_upper();
  c.notes["constant"] = decimal4(k);
  for (unsigned e = 1; e <= 12; ++e) {
    if (ctx.stop(c)) return;
    const std::uint64_t N = std::uint64_t{1} << e;
    const Rational d = sob_dstar(N);
    const double L = std::log(static_cast<double>(N));
    c.instances.push_back({{{"N", N}}, {{"dstar", to_json(d)}, {"ratio_to_leading_term", decimal6(d.to_double() / (k * L * L))}},
                           {{"constant", decimal4(k)}}, true});
  }
}

inline void check_lowbd_sob(Context& ctx, BoundCheck& c) {
  const double k = c_sob_lower();
  c.notes["constant"] = decimal4(k);
  double best = 0;
  std::uint64_t best_n = 0;
  for (std::uint64_t N = 2; N <= ctx.config().n_max; ++N) {
    if (ctx.stop(c)) return;
    const Rational d = sob_dstar(N);
    const double L = std::log(static_cast<double>(N));
    const double ratio = d.to_double() / (L * L);
    if (N >= 16 && ratio > best) {
      best = ratio;
      best_n = N;
    }
    if ((N & (N - 1)) == 0)
      c.instances.push_back({{{"N", N}}, {{"dstar", to_json(d)}, {"dstar_over_log2N", decimal6(ratio)}}, {{"constant", decimal4(k)}}, true});
  }
  c.notes["max_ratio_N_ge_16"] = {{"N", best_n}, {"value", decimal6(best)}};
}

inline void check_all_ones(Context& ctx, BoundCheck& c) {
  const Sequence X = special_sequence(SpecialKind::AllOnes2, {2});
  const std::uint64_t n = std::max<std::uint64_t>(ctx.config().n_max, 4096);
  c.notes["window"] = {{"lower", decimal4(c_all_ones_lower())}, {"upper", decimal4(c_all_ones_upper())}};
  Prefix1D pre;
  double run_max = 0;
  for (std::uint64_t N = 1; N <= n; ++N) {
    if (N % 256 == 0 && ctx.stop(c)) return;
    pre.add(X.exact(N - 1)[0]);
    if (N < 2) continue;
    const Rational d = *pre.report().dstar;
    const double ratio = d.to_double() / std::log(static_cast<double>(N));
    if (N >= 16) run_max = std::max(run_max, ratio);
    if ((N & (N - 1)) == 0)
      c.instances.push_back({{{"N", N}},
                             {{"dstar", to_json(d)}, {"dstar_over_logN", decimal6(ratio)}, {"running_max_N_ge_16", decimal6(run_max)}},
                             {{"lower", decimal4(c_all_ones_lower())}, {"upper", decimal4(c_all_ones_upper())}},
                             true});
  }
}

/// rho* trace of X_b^{Sigma,C} with Sigma = id on the set A (tau elsewhere):
/// max of D*(N)/log N over b^{k-1} < N <= b^k.
inline json rho_trace(unsigned b, unsigned k_max, Rng& r, double constant) {
  const std::size_t horizon = k_max + 4;
  PermSeq S = PermSeq::swap_set(Perm::identity(b), faure_a_bits(horizon), false);
  GenMatrix C = random_strict_upper(r, b, horizon);
  PsiCache pc;
  json rows = json::array();
  std::uint64_t N = 2;
  for (unsigned k = 1; k <= k_max; ++k) {
    const std::uint64_t hi = static_cast<std::uint64_t>(ipow(b, k));
    double best = 0;
    for (; N <= hi; ++N) best = std::max(best, formula_disc(S, C, N, &pc).dstar->to_double() / std::log(static_cast<double>(N)));
    rows.push_back({{"N_max", hi}, {"max_dstar_over_logN", decimal6(best)}});
  }
  return {{"b", b}, {"sigma", S.str()}, {"levels_matching_set_A", horizon}, {"constant", decimal4(constant)}, {"trace", rows}};
}

inline void check_lowbd_family(Context& ctx, BoundCheck& c) {
  const std::uint64_t n = ctx.config().n_max;
  for (unsigned b : {2u, 3u, 5u}) {
    Rng r = ctx.rng("lowbd_family/" + std::to_string(b));
    std::map<std::string, std::vector<Rational>> dref;  // D(N, S_b^sigma) by sigma
    for (int i = 0; i < 10; ++i) {
      if (ctx.stop(c)) return;
      Perm sigma = i == 0 ? Perm::identity(b) : random_perm(r, b);
      std::vector<bool> bits(16);
      for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = r.coin();
      PermSeq S = PermSeq::swap_set(sigma, bits, r.coin());
      GenMatrix C = random_strict_upper(r, b, 16);
      auto& ref = dref[sigma.str()];
      if (ref.empty()) {
        PsiCache pc;
        PermSeq cs = PermSeq::constant(sigma);
        for (std::uint64_t N = 1; N <= n; ++N) ref.push_back(*formula_disc(cs, GenMatrix::zero(b), N, &pc).dextreme);
      }
      Prefix1D pre;
      SlackTracker tr{"D*(N, X) >= D(N, S_b^sigma)/2"};
      for (std::uint64_t N = 1; N <= n; ++N) {
        pre.add(nut_exact(S, C, N - 1));
        tr.add(*pre.report().dstar - ref[N - 1] / Rational(2), N);
      }
      c.instances.push_back(tr.instance({{"b", b}, {"Sigma", S.str()}, {"N_max", n}}));
    }
  }
  Rng r = ctx.rng("lowbd_family/rho");
  c.notes["rho_traces_report_only"] = {rho_trace(3, 7, r, c_rho_base3()), rho_trace(2, 11, r, c_rho_base2())};
}

inline void check_sec41(Context& ctx, BoundCheck& c) {
  for (unsigned b : {2u, 3u}) {
    const double faure = 0.75 - std::sqrt(3.0 * b - 1.0) / (2.0 * b);
    for (std::size_t m = 1; m <= std::min<std::size_t>(ctx.config().m_max, 10); ++m) {
      const double logN = static_cast<double>(m) * std::log(static_cast<double>(b));
      for (const auto& [label, s] : ctx.hammersley_vectors(b, m)) {
        if (label.rfind("random", 0) == 0) continue;
        if (ctx.stop(c)) return;
        const Rational& d = ctx.hammersley_dstar(b, s);
        c.instances.push_back({{{"b", b}, {"m", m}, {"sigma", label}},
                               {{"dstar", to_json(d)}, {"dstar_decimal", decimal6(d.to_double())}},
                               {{"general_lower", decimal6(0.03 * logN)}, {"hammersley_lower_leading", decimal6(faure * static_cast<double>(m))},
                                {"hammersley_slope", decimal4(faure)}},
                               true});
      }
    }
  }
}

struct CheckSpec {
  const char* name;
  const char* anchor;
  BoundCheck::Kind kind;
  void (*run)(Context&, BoundCheck&);
};

inline const std::vector<CheckSpec>& catalog() {
  using K = BoundCheck::Kind;
  static const std::vector<CheckSpec> specs{
      {"eqnied", "D*(P) <= floor((b-1)(m-t)/2 + 3/2) b^t for digital (t,m,2)-nets", K::Assert, check_eqnied},
      {"eqlarpil", "D*(P) <= m/3 + 19/9 for digital (0,m,2)-nets over Z_2", K::Assert, check_eqlarpil},
      {"eqdk", "D*(P) <= b^t D*(H_{b,m-t}) + b^t for (t,m,2)-nets", K::Assert, check_eqdk},
      {"worst_sequence", "D*(N, X) <= D*(N, S_b^id) for (0,1)-sequences X", K::Assert, check_worst_sequence},
      {"thm2", "2D(N,S_2^id) - 5/2 <= D(N,X_2^C0) <= 2D(N,S_2^id); D*(N,S_2^id) - 3/2 <= D*(N,X_2^C0) <= D*(N,S_2^id) = D(N,S_2^id)",
       K::Assert, check_thm2},
      {"thm3", "2D(N,S_b^id) - 2(b-1) <= D(N,X_b^idtau) <= 2D(N,S_b^id); D*(N,S_b^id) - (b-1) <= D*(N,X_b^idtau) <= D*(N,S_b^id)",
       K::Assert, check_thm3},
      {"thmFL", "D*(b^t N, X_b^t) <= b^t D*(N, S_b^id) for (t,1)-sequences", K::Assert, check_thmFL},
      {"th1H", "D*(H_{b,m}^sigma) - max(max_n sum psi+, max_n sum psi-) in [0, 2]", K::Assert, check_th1H},
      {"eqf1", "D*(H_{b,m}^sigma) <= D*(H_{b,m}^id) + 2", K::Assert, check_eqf1},
      {"th2H", "D*(H_{b,m}^{id-tau}) - c_b m' in [0, 3], c_b = (b-1)/8 (odd b), b^2/(8(b+1)) (even b)", K::Assert, check_th2H},
      {"th4H", "D*(H_{b,m}^{alternating}) - c_b m in [0, 3], c_b = (b-1)(b+2)/(8(b+1)) (odd b), b^3/(8(b^2+1)) (even b)", K::Assert,
       check_th4H},
      {"th5H", "D*(H_{b,m}^{sigma sigmabar}) - (alpha+ + alpha-)/2 m' in [-1, 4]", K::Assert, check_th5H},
      {"thmnew", "D*(P) >= witness >= m/12 - 49/36 for nets with nonsingular upper-left block", K::Assert, check_thmnew},
      {"thmup02seq", "N D*_N of S_Sob against (1/(12 log^2 2)) log^2 N", K::ReportOnly, check_thmup02seq},
      {"lowbd_sob", "D*(N, S_Sob) / log^2 N against 1/(24 log^2 2)", K::ReportOnly, check_lowbd_sob},
      {"all_ones", "D*(N, X_2^{all ones}) / log N against [1/(5 log 2), 5099/(22528 log 2)]", K::ReportOnly, check_all_ones},
      {"lowbd_family", "D*(N, X_b^{Sigma_S^sigma, C}) >= D(N, S_b^sigma)/2", K::Assert, check_lowbd_family},
      {"sec41_thresholds", "D* of Hammersley nets against 0.03 log N and (3/4 - sqrt(3b-1)/(2b)) m", K::ReportOnly, check_sec41},
  };
  return specs;
}

}  // namespace harness

inline std::vector<std::string> suite_check_names() {
  std::vector<std::string> out;
  for (const auto& s : harness::catalog()) out.push_back(s.name);
  return out;
}

/// Runs the selected checks in catalog order.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  std::set<std::string> known;
  for (const auto& s : harness::catalog()) known.insert(s.name);
  bool all = false;
  std::set<std::string> chosen;
  for (const auto& s : cfg.select) {
    if (s == "all") all = true;
    else if (!known.count(s)) throw InvalidInput("suite: unknown check \"" + s + "\"");
    else chosen.insert(s);
  }
  if (cfg.m_max < 1) throw InvalidInput("suite: m_max must be >= 1");
  if (cfg.n_max < 1) throw InvalidInput("suite: n_max must be >= 1");
  SuiteReport rep{cfg, {}};
  harness::Context ctx(cfg);
  for (const auto& spec : harness::catalog()) {
    if (!all && !chosen.count(spec.name)) continue;
    BoundCheck c;
    c.name = spec.name;
    c.anchor = spec.anchor;
    c.kind = spec.kind;
    spec.run(ctx, c);
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace qmc
