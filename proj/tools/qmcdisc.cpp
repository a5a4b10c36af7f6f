// qmcdisc: command-line front end.
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <qmcdisc/discrepancy.hpp>
#include <qmcdisc/generators.hpp>
#include <qmcdisc/harness.hpp>
#include <qmcdisc/io.hpp>
#include <qmcdisc/netverify.hpp>
#include <qmcdisc/psi.hpp>
#include <qmcdisc/walsh2.hpp>

using namespace qmc;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCap = 3 };

struct Common {
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t max_points = 1'000'000;
};

/// Generator selection shared by gen, disc and check-net.
struct Family {
  std::string family = "vdc";
  unsigned base = 2;
  std::uint64_t count = 0;
  std::size_t m = 0;
  std::string sigma = "id";
  std::string swap;
  std::string c_entries;
  std::string kind;
  unsigned t = 0;
  std::size_t precision = 0;
};

void add_family_options(CLI::App* sub, Family& f) {
  sub->add_option("--family", f.family, "vdc | gvdc | nut | hammersley | sobol02 | special")
      ->check(CLI::IsMember({"vdc", "gvdc", "nut", "hammersley", "sobol02", "special"}));
  sub->add_option("--base", f.base, "Base b >= 2");
  sub->add_option("--count", f.count, "Number of sequence points");
  sub->add_option("--m", f.m, "Hammersley exponent: b^m points");
  sub->add_option("--sigma", f.sigma,
                  "Permutation (\"id\", \"tau\", \"2,0,1\") or sequence (\"const:...\", \"list:a;b|tail:c\", "
                  "\"swapset:...|bits:0110|default:1\"); Hammersley also takes \"p0|p1|...\"");
  sub->add_option("--swap", f.swap, "Hammersley swap vector: idtau | alternating | sigmasigmabar")
      ->check(CLI::IsMember({"", "idtau", "alternating", "sigmasigmabar"}));
  sub->add_option("--c", f.c_entries, "Strict upper NUT entries \"r:k=v,...\" (nut family)");
  sub->add_option("--kind", f.kind, "Special sequence: X2C0 | XbIdTau | AllOnes2 | PascalDigital | RepeatT");
  sub->add_option("--t", f.t, "RepeatT: each van der Corput point repeated b^t times");
  sub->add_option("--precision", f.precision, "Truncate coordinates to this many digits (0: exact values)");
}

void add_common_options(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (written atomically); default stdout");
  sub->add_option("--max-points", c.max_points, "Refuse point sets larger than this");
}

/// The fully resolved options of a subcommand plus the seed.
json run_config(const CLI::App* sub, std::uint64_t seed) {
  json opts = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    std::string name = o->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (o->get_expected_max() == 0) {
      opts[name] = o->count() > 0;
    } else if (o->count() > 0) {
      auto res = o->results();
      if (res.size() == 1) opts[name] = res[0];
      else opts[name] = res;
    } else {
      opts[name] = o->get_default_str();
    }
  }
  return {{"subcommand", sub->get_name()}, {"options", opts}, {"seed", seed}};
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) std::cout << text;
  else atomic_write(c.out, text);
}

GenMatrix parse_strict_upper(const std::string& text, unsigned b) {
  GenMatrix C(GenMatrix::Kind::StrictUpper, b);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':'), eq = item.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon)
      throw InvalidInput("--c: expected entries of the form r:k=v, got \"" + item + "\"");
    std::size_t r = std::stoul(item.substr(0, colon)), k = std::stoul(item.substr(colon + 1, eq - colon - 1));
    unsigned long v = std::stoul(item.substr(eq + 1));
    if (v >= b) throw InvalidInput("--c: entry value must be < base");
    C.set(r, k, static_cast<Digit>(v));
  }
  return C;
}

PermSeq parse_sigma_seq(const std::string& s, unsigned b) {
  if (s.find(':') != std::string::npos) return PermSeq::parse(s, b);
  return PermSeq::constant(Perm::parse(s, b));
}

std::vector<Perm> hammersley_sigmas(const Family& f) {
  Perm base_perm = Perm::identity(f.base);
  if (!f.swap.empty()) {
    if (f.sigma.find('|') == std::string::npos) base_perm = Perm::parse(f.sigma, f.base);
    SwapKind k = f.swap == "idtau" ? SwapKind::IdTau : f.swap == "alternating" ? SwapKind::Alternating : SwapKind::SigmaSigmaBar;
    return swap_vector(k, f.m, base_perm);
  }
  if (f.sigma.find('|') == std::string::npos) return std::vector<Perm>(f.m, Perm::parse(f.sigma, f.base));
  std::vector<Perm> out;
  std::stringstream ss(f.sigma);
  std::string item;
  while (std::getline(ss, item, '|')) out.push_back(Perm::parse(item, f.base));
  if (out.size() != f.m) throw InvalidInput("--sigma: expected " + std::to_string(f.m) + " permutations separated by '|'");
  return out;
}

std::uint64_t point_count(const Family& f) {
  if (f.family == "hammersley") {
    if (f.m < 1) throw InvalidInput("--m: Hammersley nets need m >= 1");
    return static_cast<std::uint64_t>(ipow(f.base, static_cast<unsigned>(f.m)));
  }
  if (f.count < 1) throw InvalidInput("--count: must be >= 1 for family " + f.family);
  return f.count;
}

/// The 1D sequence behind a family, if it is one.
std::optional<Sequence> family_sequence(const Family& f) {
  require_base(f.base);
  if (f.family == "vdc") return gvdc_sequence(PermSeq::constant(Perm::identity(f.base)));
  if (f.family == "gvdc") return gvdc_sequence(parse_sigma_seq(f.sigma, f.base));
  if (f.family == "nut") return nut_sequence(parse_sigma_seq(f.sigma, f.base), parse_strict_upper(f.c_entries, f.base));
  if (f.family == "sobol02") return special_sequence(SpecialKind::PascalDigital, {f.base, 2});
  if (f.family == "special") {
    auto k = parse_special_kind(f.kind);
    if (!k) throw InvalidInput("--kind: unknown special sequence \"" + f.kind + "\"");
    const Sequence inner = gvdc_sequence(PermSeq::constant(Perm::identity(f.base)));
    return special_sequence(*k, {f.base, *k == SpecialKind::PascalDigital ? 2u : 1u, f.t, &inner});
  }
  return std::nullopt;
}

std::vector<std::vector<Rational>> family_points(const Family& f, const Common& c) {
  const std::uint64_t N = point_count(f);
  if (N > c.max_points) throw CapExceeded("point count " + std::to_string(N) + " exceeds --max-points=" + std::to_string(c.max_points));
  std::vector<std::vector<Rational>> out;
  if (f.family == "hammersley") {
    PointSet2D P = hammersley(f.base, f.m, hammersley_sigmas(f));
    for (const auto& [x, y] : P.points) out.push_back({x.value(), y.value()});
    return out;
  }
  Sequence S = *family_sequence(f);
  for (std::uint64_t n = 0; n < N; ++n) {
    if (f.precision == 0) {
      out.push_back(S.exact(n));
    } else {
      std::vector<Rational> p;
      for (const auto& x : S.point(n, f.precision)) p.push_back(x.value());
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<std::vector<Rational>> load_points(const std::string& in, const Family& f, const Common& c) {
  if (in.empty()) return family_points(f, c);
  std::ifstream is(in);
  if (!is) throw InvalidInput("--in: cannot open " + in);
  auto pts = read_points_csv(is);
  if (pts.empty()) throw InvalidInput("--in: no points in " + in);
  if (pts.size() > c.max_points)
    throw CapExceeded("point count " + std::to_string(pts.size()) + " exceeds --max-points=" + std::to_string(c.max_points));
  return pts;
}

json disc_json(const DiscReport& r) {
  json j{{"N", r.N}, {"method", to_string(r.method)}};
  if (r.dplus) j["dplus"] = to_json(*r.dplus);
  if (r.dminus) j["dminus"] = to_json(*r.dminus);
  if (r.dstar) j["dstar"] = to_json(*r.dstar);
  if (r.dextreme) j["dextreme"] = to_json(*r.dextreme);
  return j;
}

BaseRational to_base_rational(const Rational& x, unsigned b) {
  if (x == Rational(1)) throw InvalidInput("check-net: coordinate 1 is outside [0,1)");
  return BaseRational::from_rational(x, b);
}

ModMatrix load_c2(const std::string& path, const std::string& preset, std::size_t m) {
  if (!path.empty()) return parse_c2_text(read_file(path));
  if (m < 1) throw InvalidInput("--m: needed with --preset");
  if (preset == "reversal") return ModMatrix::reversal(m, 2);
  if (preset == "pascal") return ModMatrix::pascal(m, 2);
  throw InvalidInput("walsh: give --c2 FILE or --preset reversal|pascal");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact discrepancy toolkit for low-dimensional nets and sequences"};
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags override it");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for every randomized step");

  Common common;
  Family fam;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a point set as exact-fraction CSV");
  add_family_options(gen, fam);
  add_common_options(gen, common);

  // disc
  std::string disc_in, disc_method = "oracle";
  auto* disc = app.add_subcommand("disc", "Exact discrepancies of a point set (CSV) or a generated family");
  disc->add_option("--in", disc_in, "Points CSV (header x or x,y)");
  disc->add_option("--method", disc_method, "oracle | formula (1D NUT families) | brute (2D, small N)")
      ->check(CLI::IsMember({"oracle", "formula", "brute"}));
  add_family_options(disc, fam);
  add_common_options(disc, common);

  // check-net
  std::string net_in;
  std::size_t net_m = 0;
  int expect_t = -1;
  auto* checknet = app.add_subcommand("check-net", "Smallest t for which a 2D point set is a (t,m,2)-net");
  checknet->add_option("--in", net_in, "Points CSV with b-adic coordinates");
  checknet->add_option("--expect-t", expect_t, "Exit 1 unless the minimal t equals this");
  add_family_options(checknet, fam);
  add_common_options(checknet, common);

  // psi
  std::int64_t grid = 12;
  auto* psi = app.add_subcommand("psi", "Tabulate phi_h and psi+-, psi on the grid k/G");
  psi->add_option("--base", fam.base, "Base b >= 2");
  psi->add_option("--sigma", fam.sigma, "Permutation");
  psi->add_option("--grid", grid, "Grid denominator G")->check(CLI::PositiveNumber);
  add_common_options(psi, common);

  // alpha
  std::size_t nmax = 6;
  bool pm = false;
  std::uint64_t budget = kDefaultBreakpointBudget;
  auto* alpha_cmd = app.add_subcommand("alpha", "Upper estimates of the constants alpha_b^sigma");
  alpha_cmd->add_option("--base", fam.base, "Base b >= 2");
  alpha_cmd->add_option("--sigma", fam.sigma, "Permutation");
  alpha_cmd->add_option("--nmax", nmax, "Largest n in min_n a_n/n");
  alpha_cmd->add_flag("--pm", pm, "Also estimate alpha+ and alpha-");
  alpha_cmd->add_option("--budget", budget, "Cap on breakpoint evaluations");
  add_common_options(alpha_cmd, common);

  // walsh
  std::string c2_path, preset;
  std::int64_t eta = -1, beta = -1;
  bool table = false, witness = false;
  auto* walsh = app.add_subcommand("walsh", "Walsh-series local discrepancy of digital (0,m,2)-nets over Z_2");
  walsh->add_option("--c2", c2_path, "C2 text file: one row per line, bits (0110) or hex (0x6)");
  walsh->add_option("--preset", preset, "reversal | pascal (with --m)");
  walsh->add_option("--m", fam.m, "Size for --preset");
  walsh->add_option("--eta", eta, "eta as an integer numerator over 2^m");
  walsh->add_option("--beta", beta, "beta as an integer numerator over 2^m");
  walsh->add_flag("--table", table, "Delta for every m-bit pair (m <= 8)");
  walsh->add_flag("--witness", witness, "Lower-bound witness and D* verification");
  add_common_options(walsh, common);

  // suite
  SuiteConfig sc;
  std::vector<std::string> select{"all"};
  auto* suite = app.add_subcommand("suite", "Run the bound-regression suite");
  suite->add_option("--select", select, "Check names or \"all\"; \"none\" selects nothing");
  suite->add_option("--m-max", sc.m_max, "Cap on net exponents");
  suite->add_option("--n-max", sc.n_max, "Cap on sequence prefix lengths");
  suite->add_option("--samples", sc.samples, "Random nets per (b, m)");
  suite->add_option("--time-budget", sc.time_budget_s, "Seconds before remaining work is skipped (0: none)");
  suite->add_flag_callback("--list", [] {
    for (const auto& n : suite_check_names()) std::cout << n << '\n';
    throw CLI::Success();
  }, "List the check names");
  add_common_options(suite, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      std::ostringstream os;
      write_points_csv(os, family_points(fam, common));
      emit(common, os.str());
      return kPass;
    }

    if (disc->parsed()) {
      json j{{"run_config", run_config(disc, seed)}};
      if (disc_method == "formula") {
        if (fam.family != "vdc" && fam.family != "gvdc" && fam.family != "nut")
          throw InvalidInput("--method formula needs family vdc, gvdc or nut");
        PermSeq S = fam.family == "vdc" ? PermSeq::constant(Perm::identity(fam.base)) : parse_sigma_seq(fam.sigma, fam.base);
        GenMatrix C = fam.family == "nut" ? parse_strict_upper(fam.c_entries, fam.base) : GenMatrix::zero(fam.base);
        j["dim"] = 1;
        j["report"] = disc_json(formula_disc(S, C, point_count(fam)));
      } else {
        auto pts = load_points(disc_in, fam, common);
        const std::size_t dim = pts.front().size();
        j["dim"] = dim;
        if (dim == 1) {
          if (disc_method == "brute") throw InvalidInput("--method brute applies to 2D point sets");
          std::vector<Rational> xs;
          for (auto& p : pts) xs.push_back(p[0]);
          j["report"] = disc_json(disc_1d(xs));
        } else {
          std::vector<std::pair<Rational, Rational>> xy;
          for (auto& p : pts) xy.emplace_back(p[0], p[1]);
          DiscReport r;
          r.N = xy.size();
          if (disc_method == "brute") {
            if (xy.size() > 400) throw CapExceeded("--method brute is capped at 400 points");
            r.dstar = star_disc_2d_bruteforce(xy);
          } else {
            r.dstar = star_disc_2d(xy);
          }
          j["report"] = disc_json(r);
        }
      }
      emit(common, j.dump(2) + "\n");
      return kPass;
    }

    if (checknet->parsed()) {
      json j{{"run_config", run_config(checknet, seed)}};
      std::vector<std::vector<BaseRational>> P;
      unsigned b = fam.base;
      for (const auto& p : load_points(net_in, fam, common)) {
        if (p.size() != 2) throw InvalidInput("check-net: points must be two-dimensional");
        P.push_back({to_base_rational(p[0], b), to_base_rational(p[1], b)});
      }
      std::size_t m = 0;
      std::uint64_t N = 1;
      while (N < P.size()) {
        N *= b;
        ++m;
      }
      if (N != P.size()) throw InvalidInput("check-net: the number of points is not a power of the base");
      const std::size_t t = minimal_t(P, b, m, 2);
      j["base"] = b;
      j["m"] = m;
      j["s"] = 2;
      j["t"] = t;
      emit(common, j.dump(2) + "\n");
      return expect_t >= 0 && static_cast<std::size_t>(expect_t) != t ? kFail : kPass;
    }

    if (psi->parsed()) {
      const Perm s = Perm::parse(fam.sigma, fam.base);
      PsiFunctions f = psi_fns(s);
      std::ostringstream os;
      os << "x";
      for (unsigned h = 0; h < s.base(); ++h) os << ",phi_" << h;
      os << ",psi_plus,psi_minus,psi\n";
      std::vector<PiecewiseLinear> phis;
      for (unsigned h = 0; h < s.base(); ++h) phis.push_back(phi(s, h));
      for (std::int64_t k = 0; k <= grid; ++k) {
        Rational x(k, grid);
        os << x.str();
        for (const auto& p : phis) os << ',' << p(x).str();
        os << ',' << f.plus(x).str() << ',' << f.minus(x).str() << ',' << f.total(x).str() << '\n';
      }
      emit(common, os.str());
      return kPass;
    }

    if (alpha_cmd->parsed()) {
      const Perm s = Perm::parse(fam.sigma, fam.base);
      auto est_json = [](const AlphaEstimate& e) {
        json a = json::array();
        for (const auto& v : e.a) a.push_back(to_json(v));
        return json{{"a", a}, {"estimate", to_json(e.estimate)}, {"n_max", e.n_max}};
      };
      json j{{"run_config", run_config(alpha_cmd, seed)}};
      j["base"] = s.base();
      j["sigma"] = s.str();
      AlphaEstimate e = alpha(s, nmax, budget);
      j["alpha"] = est_json(e);
      if (s.is_identity()) j["closed_form"] = to_json(alpha_id_closed(s.base()));
      if (pm) {
        auto [p, m] = alpha_pm(s, nmax, budget);
        j["alpha_plus"] = est_json(p);
        j["alpha_minus"] = est_json(m);
      }
      emit(common, j.dump(2) + "\n");
      return kPass;
    }

    if (walsh->parsed()) {
      json j{{"run_config", run_config(walsh, seed)}};
      Net2Base2 net(load_c2(c2_path, preset, fam.m));
      const std::size_t m = net.m();
      const std::int64_t N = std::int64_t{1} << m;
      j["m"] = m;
      json rows = json::array();
      std::istringstream c2s(format_c2_bits(net.C2()));
      for (std::string row; std::getline(c2s, row);) rows.push_back(row);
      j["C2"] = rows;
      int rc = kPass;
      if (eta >= 0 || beta >= 0) {
        if (eta < 0 || beta < 0 || eta >= N || beta >= N) throw InvalidInput("--eta/--beta: need both, each in [0, 2^m)");
        GridPointSet g = net.points();
        j["delta"] = {{"eta", to_json(Rational(eta, N))},
                      {"beta", to_json(Rational(beta, N))},
                      {"walsh", to_json(local_delta_walsh(net, MBit{static_cast<std::uint64_t>(eta)}, MBit{static_cast<std::uint64_t>(beta)}))},
                      {"direct", to_json(local_delta_direct(net.points(), eta, beta, m))}};
      }
      if (table) {
        if (m > 8) throw CapExceeded("--table is capped at m = 8");
        rows = json::array();
        for (std::int64_t e = 0; e < N; ++e)
          for (std::int64_t bb = 0; bb < N; ++bb)
            rows.push_back({e, bb, to_json(local_delta_walsh(net, MBit{static_cast<std::uint64_t>(e)}, MBit{static_cast<std::uint64_t>(bb)}))});
        j["table"] = {{"columns", {"eta_num", "beta_num", "delta"}}, {"denominator", N}, {"rows", rows}};
      }
      if (witness) {
        BlockNet bn(net.C2());
        ThmNewResult r = verify_thmnew(bn);
        Witness w = thmnew_witness(bn);
        j["witness"] = {{"eta", to_json(w.eta.as_rational(m))},
                        {"beta", to_json(w.beta.as_rational(m))},
                        {"value", to_json(w.value)},
                        {"closed_form", to_json(thmnew_witness_value(bn.m0()))},
                        {"dstar", to_json(r.dstar)},
                        {"bound", to_json(r.bound)},
                        {"pass", r.pass}};
        if (!r.pass) rc = kFail;
      }
      emit(common, j.dump(2) + "\n");
      return rc;
    }

    if (suite->parsed()) {
      sc.seed = seed;
      sc.select.clear();
      for (const auto& s : select)
        if (s != "none") sc.select.push_back(s);
      SuiteReport rep = run_suite(sc);
      json j = rep.to_json();
      j["run_config"] = run_config(suite, seed);
      emit(common, j.dump(2) + "\n");
      for (const auto& c : rep.checks)
        std::cerr << (c.pass() ? "PASS " : "FAIL ") << c.name << (c.skipped ? " (partial: " + c.skip_reason + ")" : "") << '\n';
      if (!rep.pass()) return kFail;
      return rep.any_skipped() ? kCap : kPass;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (const std::overflow_error& e) {
    std::cerr << "cap exceeded (64-bit range): " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
