#ifndef FOLSYM_OBSTRUCTION_HPP
#define FOLSYM_OBSTRUCTION_HPP

// Obstruction to strictifying a weak symmetry action at a fixed point m: the class of
// eta|_m in H^2(g, Z(g_m)) for the action nu induced by chi.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "folsym/foliation.hpp"
#include "folsym/infalgd.hpp"
#include "folsym/liealg.hpp"
#include "folsym/symaction.hpp"

namespace folsym {

/// A hypothesis of the obstruction theory does not hold; the pipeline refuses.
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool fixed_point_check(const WeakAction& a, std::span<const Scalar> m) {
  for (const auto& x : a.fields())
    if (!is_zero(evaluate_at(x, m))) return false;
  return true;
}

struct NuAction {
  /// nu(x_i) on the generator fiber K^n: column l is chi(x_i, e_l)(m).
  std::vector<Matrix> on_fiber;
  /// Induced matrices on g_m in kernel-basis coordinates.
  std::vector<Matrix> on_isotropy;
  /// Basis of Z(g_m) in g_m coordinates.
  std::vector<Vector> center_basis;
  GModule on_center;
};

/// Coordinates of a g_m-vector in the center basis; nullopt when it is not central.
inline std::optional<Vector> center_coordinates(const NuAction& nu, const Vector& v) {
  if (nu.center_basis.empty()) {
    if (is_zero(v)) return Vector{};
    return std::nullopt;
  }
  return solve(Matrix::from_columns(v.size(), nu.center_basis), v);
}

inline NuAction nu_at_point(const ChiData& chi, const IsotropyData& iso, const LieAlgebraData& g) {
  const std::size_t n = iso.n_generators, k = iso.dim();
  if (chi.values.size() != g.dim()) throw DimensionError("nu_at_point: chi does not match the Lie algebra");
  NuAction nu;
  nu.center_basis = center(iso.algebra);
  const std::size_t z = nu.center_basis.size();
  nu.on_center = GModule{z, {}};
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Matrix fib(n, n);
    for (std::size_t l = 0; l < n; ++l) {
      const Witness& w = chi.at(i, l);
      for (std::size_t a = 0; a < n; ++a) fib(a, l) = evaluate(w[a], iso.point);
    }
    for (const auto& r : iso.relations) {
      auto c = iso.coords(fib * r);
      if (!c || !is_zero(*c))
        throw HypothesisFailure("nu(x" + std::to_string(i) + ") does not preserve the evaluated syzygies");
    }
    Matrix on_g(k, k);
    for (std::size_t b = 0; b < k; ++b) {
      auto c = iso.coords(fib * iso.kernel_basis()[b]);
      if (!c) throw HypothesisFailure("nu(x" + std::to_string(i) + ") does not preserve ker(rho_m)");
      for (std::size_t a = 0; a < k; ++a) on_g(a, b) = (*c)[a];
    }
    Matrix on_z(z, z);
    for (std::size_t b = 0; b < z; ++b) {
      auto c = center_coordinates(nu, on_g * nu.center_basis[b]);
      if (!c) throw HypothesisFailure("nu(x" + std::to_string(i) + ") does not preserve the center of g_m");
      for (std::size_t a = 0; a < z; ++a) on_z(a, b) = (*c)[a];
    }
    nu.on_fiber.push_back(std::move(fib));
    nu.on_isotropy.push_back(std::move(on_g));
    nu.on_center.action.push_back(std::move(on_z));
  }
  if (auto bad = module_violation(g, nu.on_center))
    throw HypothesisFailure("not a module: nu([x" + std::to_string(bad->first) + ", x" + std::to_string(bad->second) +
                            "]) != [nu(x" + std::to_string(bad->first) + "), nu(x" + std::to_string(bad->second) + ")]");
  return nu;
}

/// A section of E_{-1} evaluated at m, in g_m coordinates; nullopt outside ker(rho_m).
inline std::optional<Vector> isotropy_coordinates(const Witness& w, const IsotropyData& iso) {
  Vector v;
  for (std::size_t a = 0; a < w.rank(); ++a) v.push_back(evaluate(w[a], iso.point));
  return iso.coords(v);
}

/// eta|_m as a g_m-valued 2-cochain.
inline Cochain eta_in_isotropy(const EtaData& eta, const IsotropyData& iso) {
  Cochain c(2, eta.g_dim(), iso.dim());
  for (const auto& [ij, w] : eta.values()) {
    auto v = isotropy_coordinates(w, iso);
    if (!v) throw InvariantViolation("eta at a fixed point lies outside ker(rho_m)");
    c.set({ij.first, ij.second}, *v);
  }
  return c;
}

/// eta|_m as a Z(g_m)-valued 2-cochain; throws HypothesisFailure if some value is not central.
inline Cochain eta_in_center(const EtaData& eta, const IsotropyData& iso, const NuAction& nu) {
  Cochain full = eta_in_isotropy(eta, iso);
  Cochain c(2, eta.g_dim(), nu.center_basis.size());
  for (const auto& t : full.tuples()) {
    auto z = center_coordinates(nu, full.value(t));
    if (!z)
      throw HypothesisFailure("eta(x" + std::to_string(t[0]) + ", x" + std::to_string(t[1]) +
                              ")|m is not in the center of g_m");
    c.set(t, *z);
  }
  return c;
}

/// beta|_m as a Z(g_m)-valued 1-cochain; nullopt if some value is not central.
inline std::optional<Cochain> beta_in_center(const std::vector<Witness>& beta, const IsotropyData& iso,
                                             const NuAction& nu) {
  Cochain c(1, beta.size(), nu.center_basis.size());
  for (std::size_t i = 0; i < beta.size(); ++i) {
    auto v = isotropy_coordinates(beta[i], iso);
    if (!v) return std::nullopt;
    auto z = center_coordinates(nu, *v);
    if (!z) return std::nullopt;
    c.set({i}, *z);
  }
  return c;
}

struct EtaClass {
  Cochain cocycle{2, 0, 0};
  CoboundaryResult coboundary;
  std::size_t h2_dim = 0;
  /// Coordinates on the H^2 representatives; zero iff exact.
  Vector class_coordinates;
  bool exact() const { return coboundary.primitive.has_value(); }
};

inline EtaClass eta_class_at_point(const EtaData& eta, const IsotropyData& iso, const NuAction& nu,
                                   const LieAlgebraData& g) {
  EtaClass out;
  out.cocycle = eta_in_center(eta, iso, nu);
  Cochain d = ce_differential(out.cocycle, g, nu.on_center);
  if (!d.is_zero()) throw InvariantViolation("d(eta|m) != 0: inconsistent action data");
  out.coboundary = coboundary_solve(out.cocycle, g, nu.on_center);
  CohomologySpace h2 = cohomology_space(g, nu.on_center, 2);
  out.h2_dim = h2.dim();
  out.class_coordinates = h2.class_coordinates(out.cocycle);
  if (out.exact() != is_zero(out.class_coordinates))
    throw InvariantViolation("coboundary solve disagrees with the cohomology class coordinates");
  return out;
}

enum class Verdict { Obstructed, UnobstructedAtPoint, NotApplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "OBSTRUCTED";
    case Verdict::UnobstructedAtPoint: return "UNOBSTRUCTED_AT_POINT";
    case Verdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

struct HypothesisEntry {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct ObstructionReport {
  Vector point;
  std::vector<HypothesisEntry> hypothesis_log;
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  std::optional<IsotropyData> isotropy;
  std::optional<NuAction> nu;
  std::optional<Cochain> eta_at_m;
  std::optional<EtaClass> eta_class;
  std::optional<Vector> class_coordinates;
};

struct ObstructionOptions {
  /// Affine-variety mode: the defining ideal, for the strong singularity log entry.
  std::optional<std::vector<Poly>> ideal;
};

/// Runs the full pipeline at m. Never throws: failed hypotheses and errors become NOT_APPLICABLE.
inline ObstructionReport obstruction_verdict(WeakAction a, std::span<const Scalar> m, ObstructionOptions opts = {}) {
  ObstructionReport rep;
  rep.point.assign(m.begin(), m.end());
  auto log = [&](std::string name, bool holds, std::string detail) {
    rep.hypothesis_log.push_back({std::move(name), holds, std::move(detail)});
  };
  auto refuse = [&](std::string reason) {
    rep.verdict = Verdict::NotApplicable;
    rep.reason = std::move(reason);
    return rep;
  };
  try {
    if (m.size() != a.nvars()) return refuse("point has " + std::to_string(m.size()) + " coordinates, ring has " +
                                             std::to_string(a.nvars()));
    if (!a.validated()) {
      ActionReport ar = validate_weak_action(a);
      log("weak symmetry action", ar.valid, ar.valid ? "valid" : ar.failure);
      if (!ar.valid) return refuse("not a weak symmetry action: " + ar.failure);
    }
    bool fixed = fixed_point_check(a, m);
    log("fixed point", fixed, fixed ? "every rho(x_i) vanishes at m" : "some rho(x_i) does not vanish at m");
    if (!fixed) return refuse("point is not a fixed point of the action");

    if (opts.ideal) {
      auto ss = strongly_singular_check(*opts.ideal, m);
      std::string d;
      for (const auto& s : ss.diagnostics) d += (d.empty() ? "" : "; ") + s;
      log("strongly singular", ss.strongly_singular, d);
    }

    const auto& f = a.foliation();
    rep.isotropy = isotropy_lie_algebra(f, m);
    const IsotropyData& iso = *rep.isotropy;

    if (f.syzygies().empty()) {
      log("minimality", true, "no syzygies");
    } else {
      bool minimal = true;
      for (const auto& v : evaluate_columns(f.syzygies(), m)) minimal = minimal && is_zero(v);
      log("minimality", minimal,
          minimal ? "syzygies vanish at m" : "minimality not established; evaluated syzygies taken as fiber relations");
    }

    ChiData chi = chi_witness(a);
    EtaData eta = eta_witness(a);
    const bool abelian = iso.is_abelian();

    rep.nu = nu_at_point(chi, iso, a.algebra());
    const NuAction& nu = *rep.nu;

    std::optional<Cochain> central;
    std::string central_failure;
    try {
      central = eta_in_center(eta, iso, nu);
    } catch (const HypothesisFailure& e) {
      central_failure = e.what();
    }
    if (abelian) {
      log("abelian or center-valued", true, "g_m is abelian (dim " + std::to_string(iso.dim()) + ")");
    } else if (central) {
      log("abelian or center-valued", true, "g_m is not abelian; eta|m takes values in Z(g_m)");
    } else {
      std::string reason = "g_m is not abelian and " + central_failure;
      log("abelian or center-valued", false, reason);
      return refuse(reason);
    }

    EtaClass cls = eta_class_at_point(eta, iso, nu, a.algebra());
    rep.eta_at_m = cls.cocycle;
    rep.class_coordinates = cls.class_coordinates;
    rep.verdict = cls.exact() ? Verdict::UnobstructedAtPoint : Verdict::Obstructed;
    rep.eta_class = std::move(cls);
    return rep;
  } catch (const std::exception& e) {
    log("computation", false, e.what());
    return refuse(e.what());
  }
}

}  // namespace folsym

#endif  // FOLSYM_OBSTRUCTION_HPP
