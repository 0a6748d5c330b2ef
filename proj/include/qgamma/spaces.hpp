#pragma once

// Named spaces for the command line: P<N>, P<a>xP<b>..., X<d>inP<N>,
// Gr(r,n) and toric:<rays.json>.

#include "qgamma/jfunction.hpp"
#include "qgamma/laurent.hpp"
#include "qgamma/schubert.hpp"

#include <numeric>
#include <regex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qgamma {

struct SpaceSpec {
  enum class Kind { Projective, Product, Hypersurface, Toric, Grassmannian };
  Kind kind = Kind::Projective;
  std::string text;
  std::vector<int> dims;  // projective dimensions N (one entry unless Product)
  int degree = 0;         // Hypersurface
  int r = 0, n = 0;       // Grassmannian
  std::string path;       // Toric

  int ambient_dim() const { return dims.empty() ? 0 : dims.front(); }
};

inline SpaceSpec parse_space(const std::string& s) {
  static const std::regex proj(R"(P(\d+))");
  static const std::regex prod(R"(P\d+(xP\d+)+)");
  static const std::regex hyp(R"(X(\d+)inP(\d+))");
  static const std::regex gr(R"(Gr\((\d+),\s*(\d+)\))");
  static const std::regex tor(R"(toric:(.+))");
  SpaceSpec sp;
  sp.text = s;
  std::smatch m;
  auto num = [](const std::string& x) {
    if (x.size() > 4) throw std::invalid_argument("dimension too large: " + x);
    return std::stoi(x);
  };
  if (std::regex_match(s, m, proj)) {
    sp.kind = SpaceSpec::Kind::Projective;
    sp.dims = {num(m[1])};
    if (sp.dims[0] < 1) throw std::invalid_argument("P^N needs N >= 1");
  } else if (std::regex_match(s, prod)) {
    sp.kind = SpaceSpec::Kind::Product;
    static const std::regex factor(R"(P(\d+))");
    for (std::sregex_iterator it(s.begin(), s.end(), factor), end; it != end; ++it) {
      sp.dims.push_back(num((*it)[1]));
      if (sp.dims.back() < 1) throw std::invalid_argument("product factors need N >= 1");
    }
  } else if (std::regex_match(s, m, hyp)) {
    sp.kind = SpaceSpec::Kind::Hypersurface;
    sp.degree = num(m[1]);
    sp.dims = {num(m[2])};
    if (sp.dims[0] < 2 || sp.degree < 1 || sp.degree > sp.dims[0]) throw std::invalid_argument("X<d>inP<N> needs N >= 2 and 1 <= d <= N");
  } else if (std::regex_match(s, m, gr)) {
    sp.kind = SpaceSpec::Kind::Grassmannian;
    sp.r = num(m[1]);
    sp.n = num(m[2]);
    check_grassmannian(sp.r, sp.n);
  } else if (std::regex_match(s, m, tor)) {
    sp.kind = SpaceSpec::Kind::Toric;
    sp.path = m[1];
  } else {
    throw std::invalid_argument("unknown space '" + s + "' (expected P<N>, P<a>xP<b>..., X<d>inP<N>, Gr(r,n) or toric:<file>)");
  }
  return sp;
}

inline std::vector<int> projective_ns(const SpaceSpec& sp) {
  std::vector<int> ns;
  for (int N : sp.dims) ns.push_back(N + 1);
  return ns;
}

inline RingPtr ring_of(const SpaceSpec& sp) {
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective: return build_projective_ring(sp.dims[0] + 1);
    case SpaceSpec::Kind::Product: return build_product_ring(projective_ns(sp));
    case SpaceSpec::Kind::Hypersurface: return build_hypersurface_ambient_ring(sp.dims[0], sp.degree);
    case SpaceSpec::Kind::Grassmannian: return schubert_ring(sp.r, sp.n);
    case SpaceSpec::Kind::Toric: break;
  }
  throw std::invalid_argument("no cohomology ring is built for toric spaces given by rays");
}

using AnyJSeries = std::variant<JSeries<Rational>, JSeries<BigReal>>;

/// J-function through degree D. Hypersurfaces keep the e^{-c0 t} factor only if `shifted`.
inline AnyJSeries j_series_of(const SpaceSpec& sp, int D, int digits, bool shifted = true) {
  if (D < 0) throw std::invalid_argument("series order must be nonnegative");
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective: return j_projective(sp.dims[0] + 1, D);
    case SpaceSpec::Kind::Product: return j_product(projective_ns(sp), D);
    case SpaceSpec::Kind::Hypersurface: {
      const int N = sp.dims[0];
      const int index = N + 1 - sp.degree;
      if (index < 1) throw std::invalid_argument("hypersurface is not Fano");
      const int kmax = (D + index - 1) / index;
      auto res = quantum_lefschetz(j_projective(N + 1, (N + 1) * kmax), sp.degree, Precision::digits(digits), shifted);
      return shifted ? res.JY : res.raw;
    }
    case SpaceSpec::Kind::Grassmannian: return bcfk_j_series(sp.r, sp.n, D, digits).J;
    case SpaceSpec::Kind::Toric: break;
  }
  throw std::invalid_argument("J-functions of toric spaces from rays are not implemented; use qperiod or conifold");
}

/// Weak Landau-Ginzburg mirror with its constant shift.
inline ShiftedLaurent mirror_of(const SpaceSpec& sp) {
  auto unit_rays = [](int N) {
    std::vector<Exponent> rays;
    for (int i = 0; i < N; ++i) {
      Exponent e(static_cast<std::size_t>(N), 0);
      e[static_cast<std::size_t>(i)] = 1;
      rays.push_back(e);
    }
    rays.push_back(Exponent(static_cast<std::size_t>(N), -1));
    return rays;
  };
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective: return {toric_mirror_from_rays(unit_rays(sp.dims[0])), Rational(0)};
    case SpaceSpec::Kind::Product: {
      const int total = std::accumulate(sp.dims.begin(), sp.dims.end(), 0);
      std::vector<Exponent> rays;
      int offset = 0;
      for (int N : sp.dims) {
        for (const auto& r : unit_rays(N)) {
          Exponent e(static_cast<std::size_t>(total), 0);
          std::copy(r.begin(), r.end(), e.begin() + offset);
          rays.push_back(e);
        }
        offset += N;
      }
      return {toric_mirror_from_rays(rays), Rational(0)};
    }
    case SpaceSpec::Kind::Hypersurface: return przyjalkowski_model(sp.dims[0], sp.degree);
    case SpaceSpec::Kind::Grassmannian: return {ehx_mirror(sp.r, sp.n), Rational(0)};
    case SpaceSpec::Kind::Toric: return {toric_mirror_from_rays(load_rays(sp.path)), Rational(0)};
  }
  throw std::logic_error("unreachable");
}

/// Quantum period through degree N, exactly.
inline QuantumPeriod quantum_period_of(const SpaceSpec& sp, int N) {
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective:
    case SpaceSpec::Kind::Product:
    case SpaceSpec::Kind::Hypersurface: {
      auto J = std::get<JSeries<Rational>>(j_series_of(sp, N, 30));
      auto G = quantum_period(J);
      G.G.resize(static_cast<std::size_t>(N) + 1, Rational(0));
      return G;
    }
    case SpaceSpec::Kind::Grassmannian: return ehx_constant_terms(sp.r, sp.n, N);
    case SpaceSpec::Kind::Toric: return constant_term_series(mirror_of(sp).shifted(), N);
  }
  throw std::logic_error("unreachable");
}

inline int fano_index_of(const SpaceSpec& sp) {
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective: return sp.dims[0] + 1;
    case SpaceSpec::Kind::Product: {
      int g = 0;
      for (int N : sp.dims) g = std::gcd(g, N + 1);
      return g;
    }
    case SpaceSpec::Kind::Hypersurface: return sp.dims[0] + 1 - sp.degree;
    case SpaceSpec::Kind::Grassmannian: return sp.n;
    case SpaceSpec::Kind::Toric: break;
  }
  throw std::invalid_argument("Fano index of a toric space from rays is not computed");
}

/// Eigenvalues of c1 for projective spaces, their products and Grassmannians.
inline std::vector<BigComplex> c1_spectrum_of(const SpaceSpec& sp, const ConstantTable& C) {
  const Precision p = C.precision();
  auto proj = [&](int n) {
    std::vector<BigComplex> v;
    for (int k = 0; k < n; ++k) v.push_back(BigComplex::polar(-(C.pi() * BigReal(make_rational(2 * k, n), p))) * static_cast<long>(n));
    return v;
  };
  switch (sp.kind) {
    case SpaceSpec::Kind::Projective: return proj(sp.dims[0] + 1);
    case SpaceSpec::Kind::Product: {
      std::vector<BigComplex> acc{BigComplex(0L, p)};
      for (int N : sp.dims) {
        std::vector<BigComplex> next;
        for (const auto& a : acc)
          for (const auto& b : proj(N + 1)) next.push_back(a + b);
        acc = std::move(next);
      }
      return acc;
    }
    case SpaceSpec::Kind::Grassmannian: return grassmann_spectrum(sp.r, sp.n, C).eigenvalues;
    default: break;
  }
  throw std::invalid_argument("c1 spectrum is available for P<N>, products and Gr(r,n) only");
}

}  // namespace qgamma
