// qgamma: command-line front end.
//
// Exit codes: 0 success or check passed, 1 check ran and failed, 2 usage or resource error.

#include "qgamma/qgamma.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#ifndef QGAMMA_VERSION
#define QGAMMA_VERSION "dev"
#endif

using namespace qgamma;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string space;
  int digits = 50;
  int order = 0;  // 0: command default
  double t_max = 40;
  int k = 6;
  double quad_tol = 1e-10;
  int quad_digits = 25;
  double tol = 0;  // 0: command default
  int terms = 10;
  double t = 1.0;
  double u = 0;
  std::string alpha;
  std::string word;
  int random_steps = 0;
  unsigned seed = 2024;
  std::string output;
  std::string format = "json";

  json echo() const {
    return {{"space", space},   {"digits", digits}, {"order", order}, {"tmax", t_max},        {"k", k},
            {"quad_tol", quad_tol}, {"quad_digits", quad_digits}, {"tol", tol}, {"terms", terms}, {"t", t},
            {"u", u},           {"alpha", alpha}, {"word", word},         {"random", random_steps},
            {"seed", seed},     {"format", format}};
  }

  void validate() const {
    if (digits < 15) throw std::invalid_argument("--digits must be at least 15");
    if (digits > 2000 || order > 20000 || terms > 5000) throw ResourceLimit("requested precision or order exceeds the built-in limits", {});
    if (order < 0 || t_max <= 0 || k < 1 || quad_tol <= 0 || quad_digits < 15 || tol < 0 || terms < 1 || t <= 0 || u < 0)
      throw std::invalid_argument("numeric options must be positive");
  }

  double tol_or(double fallback) const { return tol > 0 ? tol : fallback; }
};

/// What a subcommand hands back.
struct Report {
  std::optional<bool> verdict;
  json value = json::object();
  json errors = json::object();
  std::string csv;
};

std::string str(const BigReal& x, int digits = 30) { return x.to_string(std::min(digits, 40)); }

std::string csv_kv(const json& flat) {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [key, v] : flat.items()) os << key << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return os.str();
}

std::string labels_csv_escape(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

// ------------------------------------------------------------------ commands

Report cmd_ring(const RunConfig& cfg) {
  auto R = ring_of(parse_space(cfg.space));
  Report rep;
  rep.value = ring_to_json(*R);
  std::ostringstream os;
  os << "index,label,degree\n";
  for (int i = 0; i < R->size(); ++i) os << i << "," << labels_csv_escape(R->basis[static_cast<std::size_t>(i)].label) << "," << R->degree(i) << "\n";
  rep.csv = os.str();
  return rep;
}

Report cmd_gamma(const RunConfig& cfg) {
  auto R = ring_of(parse_space(cfg.space));
  auto C = make_constants(cfg.digits, std::max(8, R->dimension + 2));
  auto G = gamma_class(R, C);
  Report rep;
  std::ostringstream os;
  os << "index,label,value\n";
  json comps = json::array();
  for (int i = 0; i < G.size(); ++i) {
    const auto& label = R->basis[static_cast<std::size_t>(i)].label;
    comps.push_back({{"label", label}, {"value", str(G[i], cfg.digits)}});
    os << i << "," << labels_csv_escape(label) << "," << str(G[i], cfg.digits) << "\n";
  }
  rep.value = {{"ring", R->name}, {"gamma_class", comps}};
  rep.csv = os.str();
  return rep;
}

bool is_zero_scalar(const Rational& q) { return sgn(q) == 0; }
bool is_zero_scalar(const BigReal& x) { return x.is_zero(); }

Report cmd_jseries(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  const int D = cfg.order ? cfg.order : 12;
  auto J = j_series_of(sp, D, cfg.digits);
  Report rep;
  std::visit(
      [&](const auto& S) {
        rep.value = jseries_to_json(S, sp.text);
        std::ostringstream os;
        os << "d,index,label,value\n";
        for (int d = 0; d <= S.D; ++d)
          for (int i = 0; i < S[d].size(); ++i)
            if (!is_zero_scalar(S[d][i])) os << d << "," << i << "," << labels_csv_escape(S.ring->basis[static_cast<std::size_t>(i)].label) << "," << scalar_string(S[d][i]) << "\n";
        rep.csv = os.str();
      },
      J);
  return rep;
}

Report cmd_qperiod(const RunConfig& cfg) {
  auto G = quantum_period_of(parse_space(cfg.space), cfg.terms);
  Report rep;
  json rows = json::array();
  for (std::size_t d = 0; d < G.G.size(); ++d) rows.push_back({{"d", d}, {"G_d", G.G[d].get_str()}});
  rep.value = {{"r", G.r}, {"coefficients", rows}};
  rep.csv = quantum_period_csv(G);
  return rep;
}

Report cmd_conifold(const RunConfig& cfg) {
  auto m = mirror_of(parse_space(cfg.space));
  const Precision p = Precision::digits(cfg.digits);
  const BigReal tol = tenth_power(cfg.digits - 10, p);
  auto res = conifold_point(m.f, tol, p);
  Report rep;
  json x = json::array();
  for (const auto& xi : res.x_con) x.push_back(str(xi, cfg.digits));
  rep.value = {{"mirror", m.f.to_string()},
               {"shift", m.shift.get_str()},
               {"T_con", str(res.T_con, cfg.digits)},
               {"T_con_shifted", str(res.T_con - BigReal(m.shift, p), cfg.digits)},
               {"x_con", x},
               {"hessian_positive", res.hessian_positive},
               {"newton_iterations", res.newton_iterations}};
  rep.errors = {{"gradient_norm", str(res.gradient_norm, 6)}};
  json flat = {{"T_con", rep.value["T_con"]}, {"T_con_shifted", rep.value["T_con_shifted"]}, {"shift", rep.value["shift"]},
               {"gradient_norm", rep.errors["gradient_norm"]}};
  rep.csv = csv_kv(flat);
  return rep;
}

Report cmd_spectrum(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  auto C = make_constants(cfg.digits, 8);
  const Precision p = C.precision();
  auto spec = c1_spectrum_of(sp, C);
  const int r = fano_index_of(sp);
  auto po = property_o_report(spec, r, C.tolerance(10));
  Report rep;
  json eig = json::array();
  std::ostringstream os;
  os << "index,re,im,abs\n";
  for (std::size_t i = 0; i < spec.size(); ++i) {
    // tiny imaginary parts print as signed noise otherwise
    BigReal re = abs(spec[i].re) < C.tolerance(5) ? BigReal(0L, p) : spec[i].re;
    BigReal im = abs(spec[i].im) < C.tolerance(5) ? BigReal(0L, p) : spec[i].im;
    eig.push_back({str(re, 20), str(im, 20)});
    os << i << "," << str(re, 20) << "," << str(im, 20) << "," << str(abs(spec[i]), 20) << "\n";
  }
  rep.value = {{"T", str(po.T, cfg.digits)},      {"fano_index", r},
               {"multiplicity_of_T", po.multiplicity_of_T}, {"property_O", po.satisfied},
               {"roots_of_unity", po.roots_of_unity}, {"eigenvalues", eig}};
  if (sp.kind == SpaceSpec::Kind::Grassmannian) {
    auto g = grassmann_spectrum(sp.r, sp.n, C);
    rep.value["T_closed"] = str(g.T_closed, cfg.digits);
    rep.value["maximizers"] = g.maximizers;
    rep.value["maximizers_consecutive"] = g.maximizers_consecutive;
    rep.errors["T_minus_closed_form"] = str(abs(g.T - g.T_closed), 6);
  }
  rep.csv = os.str();
  return rep;
}

Report cmd_check_gamma1(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  const int D = cfg.order ? cfg.order : 600;
  const double tol = cfg.tol_or(1e-4);
  auto J = j_series_of(sp, D, cfg.digits, false);
  const Precision p = Precision::digits(cfg.digits);
  auto ring = std::visit([](const auto& S) { return S.ring; }, J);
  auto C = make_constants(cfg.digits, std::max(8, ring->dimension + 2));
  auto ex = ExtrapolationConfig::uniform(BigReal(cfg.t_max, p), cfg.k, cfg.digits);
  auto v = std::visit([&](const auto& S) { return gamma_I_verdict(S, ex, C, BigReal(tol, p)); }, J);
  Report rep;
  rep.verdict = v.pass;
  json comps = json::array();
  std::ostringstream os;
  os << "index,label,limit,target,error,extrapolation_error\n";
  for (int i = 0; i < ring->size(); ++i) {
    const auto& label = ring->basis[static_cast<std::size_t>(i)].label;
    comps.push_back({{"label", label},
                     {"limit", str(v.limit.value[i], 20)},
                     {"target", str(v.target[i], 20)},
                     {"error", str(v.component_errors[static_cast<std::size_t>(i)], 6)}});
    os << i << "," << labels_csv_escape(label) << "," << str(v.limit.value[i], 20) << "," << str(v.target[i], 20) << ","
       << str(v.component_errors[static_cast<std::size_t>(i)], 6) << "," << str(v.limit.error[i], 6) << "\n";
  }
  rep.value = {{"components", comps}, {"tolerance", tol}, {"worst_component", v.worst_component}};
  rep.errors = {{"worst_error", str(v.worst_error, 6)}, {"extrapolation_error", str(v.limit.max_error, 6)}};
  rep.csv = os.str();
  return rep;
}

HomologyVector parse_alpha(const RingPtr& R, const std::string& text) {
  if (text.empty()) {
    for (const auto& a : kernel_c1(R)) {
      bool pointlike = true;
      for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        if (sgn(a.coeffs[i]) != 0) pointlike = false;
      if (!pointlike) return a;
    }
    throw std::invalid_argument("ker c1 has no class besides the point; pass --alpha");
  }
  HomologyVector a{R, std::vector<Rational>(static_cast<std::size_t>(R->size()), Rational(0))};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--alpha expects label=coefficient pairs");
    Rational c(item.substr(eq + 1));
    c.canonicalize();
    a.coeffs[static_cast<std::size_t>(R->index_of(item.substr(0, eq)))] += c;
  }
  return a;
}

Report cmd_apery(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  const int r = fano_index_of(sp);
  const int N = cfg.terms;
  const double tol = cfg.tol_or(1e-2);
  auto J = j_series_of(sp, std::max(cfg.order, r * N), cfg.digits);
  auto ring = std::visit([](const auto& S) { return S.ring; }, J);
  auto C = make_constants(cfg.digits, std::max(8, ring->dimension + 2));
  const Precision p = C.precision();
  auto alpha = parse_alpha(ring, cfg.alpha);
  auto res = std::visit([&](const auto& S) { return apery_ratio(S, alpha, N, p); }, J);
  const BigReal target = apery_target(alpha, C);
  Report rep;
  json rows = json::array(), a = json::object();
  std::ostringstream os;
  os << "n,ratio,error\n";
  for (std::size_t i = 0; i < res.ratios.size(); ++i) {
    rows.push_back({{"n", res.n[i]}, {"ratio", str(res.ratios[i], 25)}, {"error", str(abs(res.ratios[i] - target), 6)}});
    os << res.n[i] << "," << str(res.ratios[i], 25) << "," << str(abs(res.ratios[i] - target), 6) << "\n";
  }
  for (int i = 0; i < ring->size(); ++i)
    if (sgn(alpha.coeffs[static_cast<std::size_t>(i)]) != 0) a[ring->basis[static_cast<std::size_t>(i)].label] = alpha.coeffs[static_cast<std::size_t>(i)].get_str();
  const BigReal last = abs(res.ratios.back() - target);
  rep.verdict = last < BigReal(tol, p);
  rep.value = {{"alpha", a}, {"target", str(target, 25)}, {"ratios", rows}, {"tolerance", tol}};
  if (!res.accelerated.empty()) rep.value["aitken_last"] = str(res.accelerated.back(), 25);
  rep.errors = {{"last_error", str(last, 6)}};
  rep.csv = os.str();
  return rep;
}

Report cmd_oscillatory(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  auto m = mirror_of(sp);
  QuadratureConfig q;
  q.tol = cfg.quad_tol;
  q.digits = cfg.quad_digits;
  const double t = cfg.t;
  auto I = oscillatory_integral(m.f, BigReal(1.0 / t, Precision::digits(q.digits)), q);
  Report rep;
  rep.value = {{"t", t}, {"integral", str(I.value, q.digits)}, {"h", I.h}, {"nodes", I.nodes}, {"reach", I.L}};
  rep.errors = {{"quadrature_change", str(I.change, 6)}};
  json flat = {{"integral", rep.value["integral"]}, {"quadrature_change", rep.errors["quadrature_change"]}};
  if (sp.kind == SpaceSpec::Kind::Projective || sp.kind == SpaceSpec::Kind::Product) {
    const double tol = cfg.tol_or(1e-6);
    int n = 0;
    for (int N : sp.dims) n += N + 1;
    const int D = cfg.order ? cfg.order : static_cast<int>(n * (40 + 4 * std::ceil(t * n)));
    auto J = std::get<JSeries<Rational>>(j_series_of(sp, D, cfg.digits));
    auto C = make_constants(cfg.digits, std::max(8, J.ring->dimension + 2));
    auto Z = central_charge_structure_sheaf(J, gamma_class(J.ring, C), BigReal(t, C.precision()), C);
    const BigReal rel = abs(BigReal(I.value, C.precision()) / Z.Z.re - 1L);
    rep.verdict = rel < BigReal(tol, C.precision());
    rep.value["central_charge"] = str(Z.Z.re, cfg.digits);
    rep.value["tolerance"] = tol;
    rep.errors["relative_difference"] = str(rel, 6);
    rep.errors["imaginary_residue"] = str(Z.imaginary_residue, 6);
    flat["central_charge"] = rep.value["central_charge"];
    flat["relative_difference"] = rep.errors["relative_difference"];
  } else {
    rep.value["note"] = "central charge comparison not verified for this space; integral only";
    flat["note"] = rep.value["note"];
  }
  rep.csv = csv_kv(flat);
  return rep;
}

Report cmd_lefschetz(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  if (sp.kind != SpaceSpec::Kind::Hypersurface) throw std::invalid_argument("lefschetz needs a hypersurface X<d>inP<N>");
  const int N = sp.dims[0], a = sp.degree, index = N + 1 - a;
  if (index < 1) throw std::invalid_argument("hypersurface is not Fano");
  auto C = make_constants(cfg.digits, std::max(8, N + 2));
  const Precision p = C.precision();
  const double tol = cfg.tol_or(1e-10);
  auto JX = j_projective(N + 1, (N + 1) * 4);
  auto ql = quantum_lefschetz(JX, a, p);
  auto m = przyjalkowski_model(N, a);
  auto con = conifold_point(m.f, tenth_power(cfg.digits - 10, p), p);
  const BigReal T0c0 = ql.T0 - BigReal(ql.c0, p);
  const BigReal mirror = con.T_con - BigReal(m.shift, p);
  const BigReal diff = abs(mirror - T0c0);
  bool pass = ql.c0_consistent && diff < BigReal(tol, p);
  Report rep;
  rep.value = {{"c0", ql.c0.get_str()},
               {"c0_mirror_map", ql.c0_mirror_map.get_str()},
               {"c0_consistent", ql.c0_consistent},
               {"T0", str(ql.T0, cfg.digits)},
               {"T0_minus_c0", str(T0c0, cfg.digits)},
               {"T_con_shifted", str(mirror, cfg.digits)},
               {"tolerance", tol}};
  rep.errors = {{"conifold_difference", str(diff, 6)}, {"gradient_norm", str(con.gradient_norm, 6)}};
  json flat = {{"c0", rep.value["c0"]}, {"T0", rep.value["T0"]}, {"T0_minus_c0", rep.value["T0_minus_c0"]},
               {"T_con_shifted", rep.value["T_con_shifted"]}, {"conifold_difference", rep.errors["conifold_difference"]}};
  if (cfg.u > 0) {
    const double ltol = 1e-8;
    auto lap = laplace_lefschetz_check(j_projective(N + 1, cfg.order ? cfg.order : 200), a, BigReal(cfg.u, p), ltol, C);
    pass = pass && lap.pass;
    rep.value["laplace"] = laplace_report_json(lap);
    rep.errors["laplace_max_rel_diff"] = str(lap.max_rel_diff, 6);
    flat["laplace_max_rel_diff"] = rep.errors["laplace_max_rel_diff"];
    flat["laplace_pass"] = lap.pass;
  }
  rep.verdict = pass;
  rep.csv = csv_kv(flat);
  return rep;
}

struct Collection {
  std::vector<KClass> E;
  std::vector<std::string> labels;
};

Collection collection_of(const SpaceSpec& sp) {
  Collection c;
  if (sp.kind == SpaceSpec::Kind::Projective) {
    c.E = beilinson_collection(sp.dims[0] + 1);
  } else if (sp.kind == SpaceSpec::Kind::Grassmannian) {
    auto R = schubert_ring(sp.r, sp.n);
    for (const auto& mu : box_partitions(sp.r, sp.n - sp.r)) c.E.push_back(schur_bundle(R, sp.r, sp.n, mu));
  } else {
    throw std::invalid_argument("exceptional collections are built for P<N> and Gr(r,n) only");
  }
  for (const auto& e : c.E) c.labels.push_back(e.label);
  return c;
}

Report cmd_gram(const RunConfig& cfg) {
  auto col = collection_of(parse_space(cfg.space));
  auto C = make_constants(cfg.digits, 16);
  auto g = gram_matrix(col.E, C);
  auto order = unitriangular_order(g.rounded);
  Report rep;
  rep.verdict = g.residual < C.tolerance(10) && order.has_value();
  rep.value = gram_to_json(g, col.labels);
  rep.value["unitriangular"] = order.has_value();
  rep.errors = {{"residual", str(g.residual, 6)}};
  rep.csv = gram_to_csv(g, col.labels);
  return rep;
}

std::vector<std::pair<char, std::size_t>> parse_word(const std::string& w) {
  std::vector<std::pair<char, std::size_t>> out;
  std::stringstream ss(w);
  std::string tok;
  while (ss >> tok) {
    std::stringstream inner(tok);
    std::string t;
    while (std::getline(inner, t, ',')) {
      if (t.empty()) continue;
      if ((t[0] != 'R' && t[0] != 'L') || t.size() < 2 || t.find_first_not_of("0123456789", 1) != std::string::npos)
        throw std::invalid_argument("mutation word tokens look like R0 or L2");
      out.emplace_back(t[0], std::stoul(t.substr(1)));
    }
  }
  return out;
}

Report cmd_mutate(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  if (sp.kind != SpaceSpec::Kind::Projective) throw std::invalid_argument("mutate works on the Beilinson collection of P<N>");
  const int n = sp.dims[0] + 1;
  auto C = make_constants(cfg.digits, 16);
  std::vector<BigComplex> marks;
  for (long k = 0; k < n; ++k) marks.push_back(projective_mark(n, k, C));
  MarkedBasis M = MarkedBasis::from_collection(beilinson_collection(n), marks, C);
  auto word = parse_word(cfg.word);
  if (cfg.random_steps > 0) {
    std::mt19937 rng(cfg.seed);
    for (int s = 0; s < cfg.random_steps; ++s) {
      const std::size_t i = rng() % static_cast<unsigned>(n - 1);
      word.emplace_back(rng() % 2 ? 'R' : 'L', i);
    }
  }
  bool inverses_ok = true;
  json steps = json::array();
  for (const auto& [kind, i] : word) {
    MarkedBasis next = kind == 'R' ? M.right_mutation(i) : M.left_mutation(i);
    MarkedBasis back = kind == 'R' ? next.left_mutation(i) : next.right_mutation(i);
    for (std::size_t k = 0; k < M.size(); ++k)
      if (back[k].coords != M[k].coords) inverses_ok = false;
    steps.push_back(std::string(1, kind) + std::to_string(i));
    M = std::move(next);
  }
  auto g = M.numeric_gram(C);
  auto order = unitriangular_order(g.rounded);
  const bool exact_match = g.rounded == M.exact_gram();
  Report rep;
  rep.verdict = inverses_ok && exact_match && order.has_value() && g.residual < C.tolerance(10);
  json items = json::array();
  std::ostringstream os;
  os << "position,label,mark_re,mark_im,coords\n";
  for (std::size_t k = 0; k < M.size(); ++k) {
    json coords = json::array();
    std::string cs;
    for (const auto& c : M[k].coords) {
      coords.push_back(c.get_str());
      cs += (cs.empty() ? "" : " ") + c.get_str();
    }
    items.push_back({{"label", M[k].label}, {"mark", {str(M[k].mark.re, 20), str(M[k].mark.im, 20)}}, {"coords", coords}});
    os << k << "," << labels_csv_escape(M[k].label) << "," << str(M[k].mark.re, 20) << "," << str(M[k].mark.im, 20) << "," << cs << "\n";
  }
  json exact = json::array();
  for (const auto& row : M.exact_gram()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    exact.push_back(r);
  }
  rep.value = {{"word", steps}, {"basis", items}, {"gram", exact}, {"unitriangular", order.has_value()},
               {"inverse_restores", inverses_ok}, {"numeric_matches_exact", exact_match}};
  rep.errors = {{"gram_residual", str(g.residual, 6)}};
  rep.csv = os.str();
  return rep;
}

Report cmd_fekete(const RunConfig& cfg) {
  auto sp = parse_space(cfg.space);
  auto m = mirror_of(sp);
  const int r = sp.kind == SpaceSpec::Kind::Toric ? 1 : fano_index_of(sp);
  const int N = cfg.terms;
  auto rep_f = fekete_limit(m.f, r, N, Precision::digits(cfg.digits));
  const auto raw = constant_terms(m.f, r * N);
  auto raw_bad = supermultiplicativity_violations(raw, r * N);
  Report rep;
  rep.verdict = raw_bad.empty();
  json alpha = json::array();
  std::ostringstream os;
  os << "k,alpha_k\n";
  for (std::size_t i = 0; i < rep_f.alpha.size(); ++i) {
    alpha.push_back(str(rep_f.alpha[i], 20));
    os << i + 1 << "," << str(rep_f.alpha[i], 20) << "\n";
  }
  json bad = json::array();
  for (const auto& [a, b] : raw_bad) bad.push_back({a, b});
  rep.value = {{"r", r},
               {"alpha", alpha},
               {"limit_estimate", str(rep_f.limit_estimate, 20)},
               {"subsequence_verdict", rep_f.verdict},
               {"raw_total", r * N},
               {"raw_violations", bad}};
  QuantumPeriod G{};
  G.r = r;
  for (std::size_t d = 0; d < raw.size(); ++d) G.G.push_back(raw[d] / Rational(factorial(static_cast<unsigned long>(d))));
  try {
    auto gr = growth_rate(G, Precision::digits(cfg.digits));
    rep.value["growth_rate"] = str(gr.corrected, 20);
    rep.errors["growth_raw_minus_corrected"] = str(abs(gr.raw - gr.corrected), 6);
  } catch (const std::invalid_argument&) {
    rep.value["growth_rate"] = "too few nonzero terms";
  }
  rep.errors["alpha_last_step"] = rep_f.alpha.size() >= 2 ? str(abs(rep_f.alpha.back() - rep_f.alpha[rep_f.alpha.size() - 2]), 6) : "n/a";
  rep.csv = os.str();
  return rep;
}

int emit(const RunConfig& cfg, const std::string& command, const Report& rep) {
  std::string text;
  if (cfg.format == "csv") {
    text = rep.csv;
  } else {
    json j;
    j["tool_version"] = QGAMMA_VERSION;
    j["command"] = command;
    j["config_echo"] = cfg.echo();
    if (rep.verdict) j["verdict"] = *rep.verdict ? "pass" : "fail";
    j["value"] = rep.value;
    j["error_estimates"] = rep.errors;
    text = j.dump(2) + "\n";
  }
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw ResourceLimit("cannot write " + cfg.output, {});
    f << text;
  }
  return rep.verdict.value_or(true) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Quantum periods, Gamma classes and their asymptotics"};
  app.set_version_flag("--version", std::string(QGAMMA_VERSION));
  app.set_config("--config", "", "key = value file; flags on the command line win");
  app.require_subcommand(1);
  app.add_option("--space", cfg.space, "P<N>, P<a>xP<b>..., X<d>inP<N>, Gr(r,n) or toric:<rays.json>");
  app.add_option("--digits", cfg.digits, "working precision in decimal digits")->capture_default_str();
  app.add_option("--order", cfg.order, "series order D (0 picks a default per command)")->capture_default_str();
  app.add_option("--tmax", cfg.t_max, "largest t on the extrapolation grid")->capture_default_str();
  app.add_option("-k,--extrapolation-order", cfg.k, "extrapolation order in 1/t")->capture_default_str();
  app.add_option("--quad-tol", cfg.quad_tol, "relative tolerance of the oscillatory quadrature")->capture_default_str();
  app.add_option("--quad-digits", cfg.quad_digits, "precision of the oscillatory quadrature")->capture_default_str();
  app.add_option("--tol", cfg.tol, "verdict tolerance (0 picks a default per command)")->capture_default_str();
  app.add_option("-N,--terms", cfg.terms, "number of terms or indices")->capture_default_str();
  app.add_option("-t,--t", cfg.t, "point t > 0 for oscillatory")->capture_default_str();
  app.add_option("-u,--u", cfg.u, "Laplace check at u (lefschetz; 0 skips it)")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "class as label=coeff,... (apery)");
  app.add_option("--word", cfg.word, "mutation word such as 'R0 L2 R1'");
  app.add_option("--random", cfg.random_steps, "append this many random mutations")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for --random")->capture_default_str();
  app.add_option("-o,--output", cfg.output, "write here instead of stdout");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  using Fn = Report (*)(const RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Fn>> commands{
      {"ring", "cohomology ring as JSON", cmd_ring},
      {"gamma", "Gamma class components", cmd_gamma},
      {"jseries", "J-function coefficients", cmd_jseries},
      {"qperiod", "quantum period G_0..G_N", cmd_qperiod},
      {"conifold", "conifold point of the mirror", cmd_conifold},
      {"spectrum", "eigenvalues of c1 and Property O", cmd_spectrum},
      {"check-gamma1", "Gamma conjecture I by extrapolation", cmd_check_gamma1},
      {"apery", "Apery limits against <alpha, Gamma>", cmd_apery},
      {"oscillatory", "oscillatory integral against the central charge", cmd_oscillatory},
      {"lefschetz", "c0, T0 and the conifold value of a hypersurface", cmd_lefschetz},
      {"gram", "Gram matrix of an exceptional collection", cmd_gram},
      {"mutate", "mutations of the Beilinson collection", cmd_mutate},
      {"fekete", "supermultiplicativity and growth of Const(f^d)", cmd_fekete},
  };
  for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& [name, help, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    try {
      cfg.validate();
      if (cfg.space.empty() && name != "mutate") throw std::invalid_argument("--space is required");
      if (cfg.space.empty()) cfg.space = "P4";
      return emit(cfg, name, fn(cfg));
    } catch (const std::exception& e) {
      std::cerr << "qgamma " << name << ": " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
