#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

#include "qchar/borelneg.hpp"
#include "qchar/closedforms.hpp"
#include "qchar/config.hpp"
#include "qchar/tensorsim.hpp"

using namespace qchar;
using nlohmann::json;

namespace {

struct Flags {
  std::string window, q, format;
  int degcap = -1, depth = -1;
  long long seed = -1;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  apply_env(cfg);
  if (!f.window.empty()) cfg.window = parse_window(f.window);
  if (f.degcap >= 0) cfg.degcap = f.degcap;
  if (f.depth >= 0) cfg.depth = f.depth;
  if (!f.q.empty()) {
    if (f.q == "symbolic")
      cfg.qmode = QMode::Symbolic;
    else
      parse_qmode(f.q, cfg);
  }
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  if (f.format == "json") cfg.format = OutputFormat::Json;
  if (f.format == "text") cfg.format = OutputFormat::Text;
  if (cfg.degcap < 0 || cfg.depth < 0) throw std::invalid_argument("degcap and depth must be nonnegative");
  return cfg;
}

Region region_of(const RunConfig& c) { return Region{c.window, c.degcap}; }

json config_json(const RunConfig& c) {
  json q = c.qmode == QMode::Symbolic ? json("symbolic") : json({c.q0a.get_str(), c.q0b.get_str()});
  return {{"window", {c.window.rmin, c.window.rmax}},
          {"degcap", c.degcap},
          {"depth", c.depth},
          {"q", q},
          {"seed", c.seed}};
}

void emit(const RunConfig& cfg, const std::string& command, json body, const std::string& text) {
  if (cfg.format == OutputFormat::Json) {
    body["schema"] = 1;
    body["command"] = command;
    body["config"] = config_json(cfg);
    std::cout << body.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  }
}

// A module covering the window below its top, with room for two extra truncation depths.
TModule tmodule_for(const LWeight& psi, const Window& w) {
  TModule probe(psi, 1);
  int depth = std::max(1, (probe.a_index(0) - w.rmin) / 2 + 3);
  return TModule(psi, depth);
}

int cmd_qchar(const RunConfig& cfg, const std::string& expr) {
  LWeight psi = parse_lweight(expr);
  Region reg = region_of(cfg);
  QCharSeries s = chi_infinity(psi, reg);
  emit(cfg, "qchar", {{"input", expr}, {"top", psi.str()}, {"series", s.to_json()}},
       "top " + psi.str() + "\n" + s.str());
  return 0;
}

int cmd_limit(const RunConfig& cfg, int r) {
  if (r % 2) throw std::invalid_argument("limit index must be even");
  Region reg = region_of(cfg);
  auto gen = [&](int n) {
    std::vector<int> ys;
    for (int k = 0; k < n; ++k) ys.push_back(r - 2 * k - 1);
    return standard_qchar(ys, reg);
  };
  Stabilization st = stabilization_check(gen, reg);
  bool match = st.series == prefund_limit_qchar(r, reg);
  emit(cfg, "limit",
       {{"r", r}, {"n_stable", st.n_stable}, {"matches_closed_form", match}, {"series", st.series.to_json()}},
       "stable from N = " + std::to_string(st.n_stable) + (match ? " (matches closed form)\n" : " (MISMATCH)\n") +
           st.series.str());
  return match ? 0 : 1;
}

int cmd_decompose(const RunConfig& cfg) {
  Region reg = region_of(cfg);
  auto rep = verify_decomposition(reg);
  int depth = -reg.window.rmin / 2;
  json rows = json::array();
  std::string text;
  for (auto& g : gapped_tuples(depth, depth)) {
    QCharSeries s = simple_qchar_gapped(g, reg);
    if (s.size() == 0) continue;
    rows.push_back({{"tuple", g.rs}, {"terms", s.size()}});
    text += "(" + g.str() + ") " + std::to_string(s.size()) + " terms\n";
  }
  bool ok = rep.equal && rep.multiplicity_free;
  json body = rep.to_json();
  body["simples"] = rows;
  body["pass"] = ok;
  emit(cfg, "decompose", body, text + (ok ? "pass" : "FAIL"));
  return ok ? 0 : 1;
}

struct Check {
  std::string name, anchor;
  bool ok;
  json detail;
};

std::vector<QScalar> expected_witness(int n) {
  std::vector<QScalar> v;
  for (int k = 0; k <= n; ++k) v.push_back(QScalar::q_pow(-2 * k - 1));
  return v;
}

int cmd_verify(const RunConfig& cfg, const std::string& target, int D, int N, int count, int rmax,
               const std::string& psi_text) {
  Region reg = region_of(cfg);
  std::vector<Check> checks;
  LWeight psi = parse_lweight(psi_text);
  if (target == "decomp") {
    auto rep = verify_decomposition(reg);
    checks.push_back({"coefficients", "decomposition into simple q-characters", rep.equal, rep.to_json()});
    checks.push_back({"multiplicity_free", "decomposition into simple q-characters", rep.multiplicity_free, {}});
  } else if (target == "multiplicativity") {
    int bad = 0;
    for (int i = 0; i < count; ++i) {
      LWeight a = random_negative_lweight(cfg.seed + 2 * i, cfg.depth);
      LWeight b = random_negative_lweight(cfg.seed + 2 * i + 1, cfg.depth);
      if (!qchar_multiplicativity_check(a, b, reg)) ++bad;
    }
    checks.push_back({"multiplicativity", "q-character of a product of negative l-weights", bad == 0,
                      {{"samples", count}, {"failures", bad}}});
    auto ord = order_compatibility_check(sample_order_triples(cfg.seed, count, cfg.depth));
    checks.push_back({"order", "order compatibility of products", ord.ok,
                      {{"samples", ord.samples}, {"premise_held", ord.premise_held}}});
  } else if (target == "triangularity") {
    TModule t = tmodule_for(psi, cfg.window);
    auto rep = triangularity_report(t, cfg.depth, cfg.window, rmax);
    checks.push_back({"triangularity", "h_r acts triangularly on T", rep.ok(), rep.to_json()});
  } else if (target == "induced") {
    TModule t = tmodule_for(psi, cfg.window);
    std::vector<int> rset;
    for (int r = 1; r <= rmax; ++r) rset.push_back(r);
    auto rep = eigenvector_location_check(t, D, cfg.depth, cfg.window, rset);
    checks.push_back({"location", "l-weight vectors of the induced module lie in 1 (x) T", rep.ok(), rep.to_json()});
    Region r2{cfg.window, cfg.depth};
    bool same = induced_qchar(t, cfg.depth, cfg.window, rmax, D) == qchar_T(psi, r2);
    checks.push_back({"qchar", "induced module has the q-character of T", same, {}});
  } else if (target == "stability") {
    TModule t = tmodule_for(psi, cfg.window);
    int states = 0, bad = 0;
    for (int n = 0; n <= cfg.depth; ++n)
      for (auto& J : truncated_basis(t, n, cfg.window)) {
        ++states;
        TState v = TState::basis(J);
        for (int r = 1; r <= rmax; ++r)
          if (t.act_h(r, v, 1) != t.act_h(r, v, 2)) ++bad;
        for (int m = 0; m <= 3; ++m)
          if (t.act_xplus(m, v, 1) != t.act_xplus(m, v, 2)) ++bad;
      }
    checks.push_back({"stability", "action independent of the tensor truncation", bad == 0,
                      {{"states", states}, {"failures", bad}}});
  } else if (target == "divergence") {
    auto w = xminus_divergence_witness(N);
    json coeffs = json::array();
    for (auto& c : w) coeffs.push_back(c.str());
    checks.push_back({"divergence", "x_1^- v_empty has no limit in T", w == expected_witness(N), coeffs});
  } else if (target == "oracle") {
    auto rep = linear_oracle_check(D);
    checks.push_back({"oracle", "PBW normal form agrees with the relation quotient", rep.ok, rep.to_json()});
  } else {
    throw std::invalid_argument("unknown verify target " + target);
  }

  bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
  json arr = json::array();
  std::string text;
  for (auto& c : checks) {
    arr.push_back({{"name", c.name}, {"anchor", c.anchor}, {"pass", c.ok}, {"detail", c.detail}});
    text += (c.ok ? "pass  " : "FAIL  ") + c.name + "  (" + c.anchor + ")";
    if (target == "divergence") text += "  " + c.detail.dump();
    text += "\n";
  }
  emit(cfg, "verify", {{"target", target}, {"pass", all}, {"checks", arr}}, text);
  return all ? 0 : 1;
}

std::vector<EvalModule> parse_factors(const std::string& spec, bool normalized) {
  std::vector<EvalModule> out;
  TextCursor c(spec);
  if (c.at_end()) c.fail("empty factor list");
  do {
    if (c.word() != "V") c.fail("expected V[k,s]");
    c.expect('[');
    long k = c.integer();
    c.expect(',');
    long s = c.integer();
    c.expect(']');
    if (k < 1) c.fail("module length must be positive");
    out.push_back(make_eval_module(static_cast<int>(k), static_cast<int>(s), normalized));
  } while (c.eat('*'));
  if (!c.at_end()) c.fail("unexpected input");
  return out;
}

int cmd_simulate(const RunConfig& cfg, const std::string& spec, bool normalized) {
  auto factors = parse_factors(spec, normalized);
  int rmax = 1;
  for (auto& f : factors) rmax += f.k;
  std::vector<std::pair<LWeight, int>> lw;
  if (cfg.qmode == QMode::Rational) {
    lw = lweight_decomposition_specialized(factors, rmax, cfg.q0a, cfg.q0b);
  } else {
    SymbolicTensor t(factors);
    lw = t.lweight_decomposition(rmax);
  }
  std::sort(lw.begin(), lw.end(), [](auto& a, auto& b) { return a.first < b.first; });
  json rows = json::array();
  std::string text;
  for (auto& [w, m] : lw) {
    rows.push_back({{"lweight", w.str()}, {"multiplicity", m}});
    text += w.str() + "\t" + std::to_string(m) + "\n";
  }
  emit(cfg, "simulate", {{"factors", spec}, {"rows", rows}}, text);
  return 0;
}

int cmd_induce(const RunConfig& cfg, const std::vector<int>& word, int r, const std::string& J,
               const std::string& psi_text) {
  if (r <= 0) {
    auto e = pbw_normalize(word);
    json terms = json::array();
    for (auto& [w, c] : e.terms) terms.push_back({{"word", word_str(w)}, {"coeff", c.str()}});
    emit(cfg, "induce", {{"word", word_str(word)}, {"normal_form", terms}}, e.str());
    return 0;
  }
  std::vector<int> depths;
  std::stringstream ss(J);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) depths.push_back(std::stoi(tok));
  std::sort(depths.begin(), depths.end());
  LWeight psi = parse_lweight(psi_text);
  int maxd = depths.empty() ? 0 : depths.back();
  TModule t(psi, maxd + 2);
  InducedState v = InducedState::pure(word, TState::basis(SubsetIndex::of_depths(depths)));
  InducedState hv = act_h_induced(t, r, v, word_degree(word) + r);
  json terms = json::array();
  for (auto& [k, c] : hv.terms)
    terms.push_back({{"word", word_str(k.first)}, {"J", k.second.str()}, {"coeff", c.str()}});
  emit(cfg, "induce", {{"state", v.str()}, {"r", r}, {"image", terms}}, hv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-characters and asymptotic modules for U_q(sl2 hat)"};
  app.require_subcommand(1);
  Flags flags;
  auto common = [&](CLI::App* s) {
    s->add_option("--window", flags.window, "A-index window rmin:rmax");
    s->add_option("--degcap", flags.degcap, "total A^-1 degree cap");
    s->add_option("--depth", flags.depth, "max |J| for truncations of T, or sampling depth");
    s->add_option("--q", flags.q, "symbolic, or two rational specialization points a,b");
    s->add_option("--seed", flags.seed, "seed for randomized checks");
    s->add_option("--format", flags.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };

  std::string expr;
  auto* q = app.add_subcommand("qchar", "q-character of an l-weight or Y-string");
  q->add_option("expr", expr)->required();
  common(q);

  int lim_r = 0;
  auto* lim = app.add_subcommand("limit", "stabilized limit of the standard sequence");
  lim->add_option("--r", lim_r, "even spectral index of the limit");
  common(lim);

  auto* dec = app.add_subcommand("decompose", "decomposition into simple q-characters");
  common(dec);

  std::string target, psi_text = "Psi[0]^-1";
  int D = 4, N = 3, count = 100, rmax = 3;
  auto* ver = app.add_subcommand("verify", "run a verification");
  ver->add_option("target", target)
      ->required()
      ->check(CLI::IsMember(
          {"decomp", "multiplicativity", "triangularity", "induced", "stability", "divergence", "oracle"}));
  ver->add_option("--D", D, "PBW degree bound");
  ver->add_option("--N", N, "number of tensor factors");
  ver->add_option("--count", count, "number of random samples");
  ver->add_option("--rmax", rmax, "largest h_r index");
  ver->add_option("--psi", psi_text, "negative l-weight of T");
  common(ver);

  std::string spec;
  bool normalized = false;
  auto* sim = app.add_subcommand("simulate", "l-weights of a tensor product of evaluation modules");
  sim->add_option("factors", spec, "V[k,s] * V[k,s] ...")->required();
  sim->add_flag("--normalized", normalized, "normalize each factor to weight 0");
  common(sim);

  std::vector<int> word;
  int hr = 0;
  std::string J;
  auto* ind = app.add_subcommand("induce", "normal ordering in U^-(b) and h_r on the induced module");
  ind->add_option("word", word, "PBW indices")->expected(0, -1);
  ind->add_option("--hr", hr, "apply h_r to word (x) v_J");
  ind->add_option("--J", J, "comma-separated depths");
  ind->add_option("--psi", psi_text, "negative l-weight of T");
  common(ind);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = resolve(flags);
    if (*q) return cmd_qchar(cfg, expr);
    if (*lim) return cmd_limit(cfg, lim_r);
    if (*dec) return cmd_decompose(cfg);
    if (*ver) return cmd_verify(cfg, target, D, N, count, rmax, psi_text);
    if (*sim) return cmd_simulate(cfg, spec, normalized);
    if (*ind) return cmd_induce(cfg, word, hr, J, psi_text);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
