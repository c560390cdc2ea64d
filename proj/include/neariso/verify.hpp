#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neariso/linear_operator.hpp"
#include "neariso/maps.hpp"
#include "neariso/sampler.hpp"
#include "neariso/space.hpp"

namespace neariso {

/// The approximation bounds that can be checked against sampled deviations.
///   figiel-2eps      ||T f(x) - x|| <= 2 eps          (T a norm-one left inverse)
///   nearsurj-2eps    ||f(x) - U x|| <= 2 eps          (f nearsurjective)
///   delta-onto-2e2d  ||f(x) - U x|| <= 2 eps + 2 delta
///   hilbert-2e-d     ||f(x) - U x|| <= 2 eps + delta  (Hilbert codomain)
///   hilbert-pythag   ||f(x) - U x|| <= sqrt(4 eps^2 + delta^2)
enum class BoundKind { figiel_2eps, nearsurj_2eps, delta_onto_2e2d, hilbert_2e_d, hilbert_pythag };

const char* to_string(BoundKind kind) noexcept;
BoundKind parse_bound_kind(std::string_view name);
const std::vector<BoundKind>& all_bound_kinds();

/// Whether `kind` can be evaluated for `f`: required metadata present and,
/// for the Hilbert kinds, a p = 2 codomain.
bool bound_checkable(BoundKind kind, const MapInstance& f);

/// Whether the hypotheses behind `kind` hold for `f`, so that a violation
/// would contradict the bound: checkable, plus a uniformly convex codomain for
/// figiel-2eps and a claimed delta onto the whole codomain for nearsurj-2eps.
bool bound_applicable(BoundKind kind, const MapInstance& f);

/// Value of the bound for the map's claimed constants.
double bound_value(BoundKind kind, const MapInstance& f);

/// A sampled deviation compared against a bound. The measured value is a
/// supremum over samples, hence a lower bound of the true supremum: a pass is
/// evidence, a failure is a counterexample.
struct BoundReport {
  BoundKind kind = BoundKind::nearsurj_2eps;
  std::string label;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  Vector argmax;
  std::size_t samples = 0;
  bool passed = false;
};

/// Deviation of one point: ||A f(x) - x|| in the domain for figiel-2eps,
/// ||f(x) - A x|| in the codomain otherwise.
double bound_deviation(const MapInstance& f, const LinearOperator& a, BoundKind kind,
                       const Vector& x);

/// Max deviation over the sampler's points; passed iff margin >= -1e-9.
BoundReport check_bound(const MapInstance& f, const LinearOperator& a, BoundKind kind,
                        const Sampler& sampler);

/// One attainment experiment of the sharpness suite.
struct SharpnessCheck {
  std::string name;
  std::string detail;
  double expected = 0.0;
  double measured = 0.0;
  Vector at;
  /// (x, deviation) series for growth experiments.
  std::vector<std::pair<double, double>> series;
  bool passed = false;
};

/// Attainment experiments showing the constants cannot be lowered:
///  (a) sharp-l1 reaches 2 eps + 2 delta at x = delta + eps against Ut = (t, 0),
///      and deviates without bound from Ut = (-t, 0);
///  (b) ramp-hilbert deviates by exactly delta for every sampled t >= r
///      against Ut = (t, 0), and without bound from Ut = (-t, 0);
///  (c) hyers-ulam deviates by sqrt(2 eps x) at x = 10, 100, 1000, 10000,
///      strictly increasing.
/// Attainments are exact to 1e-12.
std::vector<SharpnessCheck> sharpness_suite(double eps, double delta);

struct InnerProductCheck {
  double worst_ratio = 0.0;
  double worst_lhs = 0.0;
  Vector x;
  Vector y;
  std::size_t pairs = 0;
  bool passed = false;
};

/// Checks |f(x) . f(y) - Ux . Uy| <= 2 eps (||x|| + ||y|| + eps) over the
/// sampler's pairs (every pair among the dense points plus the sparse pairs),
/// with U the reference isometry embedding the domain. Needs a p = 2 codomain.
InnerProductCheck inner_product_bound_check(const MapInstance& f, const LinearOperator& u,
                                            const Sampler& sampler);

struct FrechetDecay {
  std::vector<double> t;
  std::vector<double> d;
  bool monotone = false;
  bool decayed = false;
  bool passed = false;
};

/// d(t) = ||t z + w|| - t ||z|| at t = 2^k, k = 0..20, for w annihilated by
/// j(z) (|j(z) w| <= 1e-12). Requires d nonincreasing from t = 4 on, up to
/// rounding, and d(2^20) <= 1e-4 ||w||.
FrechetDecay frechet_limit_check(const Vector& z, const Vector& w, const SpaceSpec& space);

/// w - (j(z) w / j(z) z) z, which is annihilated by j(z).
Vector annihilate(const Vector& w, const Vector& z, const SpaceSpec& space);

}  // namespace neariso
