#include "neariso/maps.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "neariso/error.hpp"

namespace neariso {

Subspace::Subspace(SpaceSpec ambient, Matrix basis) : ambient_(ambient), basis_(std::move(basis)) {
  if (static_cast<std::size_t>(basis_.rows()) != ambient_.dim()) {
    throw Error(Errc::dimension_mismatch, "subspace basis vectors do not live in the ambient space");
  }
  if (basis_.cols() == 0) throw Error(Errc::invalid_argument, "subspace basis is empty");
  if (!basis_.allFinite()) throw Error(Errc::invalid_argument, "subspace basis has non-finite entries");
  Eigen::ColPivHouseholderQR<Matrix> qr(basis_);
  qr.setThreshold(1e-12);
  if (qr.rank() != basis_.cols()) {
    throw Error(Errc::invalid_argument, "subspace basis is linearly dependent");
  }
}

Subspace Subspace::leading_axes(const SpaceSpec& ambient, std::size_t k) {
  if (k == 0 || k > ambient.dim()) throw Error(Errc::invalid_argument, "bad subspace dimension");
  return Subspace(ambient, Matrix::Identity(ambient.dim(), k));
}

Vector Subspace::combine(const Vector& coeffs) const {
  if (static_cast<std::size_t>(coeffs.size()) != dim()) {
    throw Error(Errc::dimension_mismatch, "coefficient count does not match subspace dimension");
  }
  return basis_ * coeffs;
}

Vector MapInstance::operator()(const Vector& x) const {
  detail::require_dim(x, domain, "map argument");
  Vector y = eval(x);
  detail::require_dim(y, codomain, "map value");
  return y;
}

namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(Errc::invalid_argument, std::string(name) + " must be finite and nonnegative");
  }
}

const SpaceSpec kLine{1, 2.0};
const SpaceSpec kEuclideanPlane{2, 2.0};

}  // namespace

MapInstance make_hyers_ulam(double eps) {
  require_nonnegative(eps, "eps");
  MapInstance f{.id = "hyers-ulam",
                .domain = kLine,
                .codomain = kEuclideanPlane,
                .eval = [eps](const Vector& x) {
                  Vector y(2);
                  y << x[0], std::sqrt(2.0 * eps * std::abs(x[0]));
                  return y;
                },
                .claimed_eps = eps,
                .claimed_delta = std::nullopt,
                .target_subspace = std::nullopt,
                .reference = leading_axes_embedding(kLine, kEuclideanPlane)};
  return f;
}

MapInstance make_sharp_l1(double eps, double delta) {
  require_nonnegative(eps, "eps");
  require_nonnegative(delta, "delta");
  const SpaceSpec plane_l1{2, 1.0};
  const double corner = delta + eps;
  MapInstance f{.id = "sharp-l1",
                .domain = kLine,
                .codomain = plane_l1,
                .eval = [eps, delta, corner](const Vector& x) {
                  const double t = x[0];
                  Vector y(2);
                  if (t == 0.0) {
                    y << 0.0, 0.0;
                  } else if (t == corner) {
                    y << -eps, delta;
                  } else if (t < 0.0) {
                    y << t - eps, 0.0;
                  } else if (t <= delta) {
                    y << -eps, t;
                  } else {
                    y << t - delta - eps, delta;
                  }
                  return y;
                },
                .claimed_eps = eps,
                .claimed_delta = delta,
                .target_subspace = Subspace::leading_axes(plane_l1, 1),
                .reference = leading_axes_embedding(kLine, plane_l1)};
  return f;
}

MapInstance make_ramp_hilbert(double eps, double delta) {
  require_nonnegative(eps, "eps");
  require_nonnegative(delta, "delta");
  if (delta > 0.0 && eps == 0.0) {
    throw Error(Errc::invalid_argument, "the ramp needs eps > 0 when delta > 0");
  }
  const double r = delta > 0.0 ? delta * delta / (2.0 * eps) : 0.0;
  MapInstance f{.id = "ramp-hilbert",
                .domain = kLine,
                .codomain = kEuclideanPlane,
                .eval = [delta, r](const Vector& x) {
                  const double t = x[0];
                  double g = 0.0;
                  if (delta > 0.0 && t > 0.0) g = t >= r ? delta : delta * t / r;
                  Vector y(2);
                  y << t, g;
                  return y;
                },
                .claimed_eps = eps,
                .claimed_delta = delta,
                .target_subspace = Subspace::leading_axes(kEuclideanPlane, 1),
                .reference = leading_axes_embedding(kLine, kEuclideanPlane)};
  return f;
}

namespace {

// eta_j(x) = c (sin(w_j . x + phase_j) - sin(phase_j)) / 2, |eta_j| <= c.
struct Perturbation {
  Matrix freq;    // codomain_dim x domain_dim
  Vector phase;   // codomain_dim
  Vector offset;  // sin(phase)
  double amplitude = 0.0;

  Vector operator()(const Vector& x) const {
    Vector arg = freq * x + phase;
    Vector out(arg.size());
    for (Eigen::Index j = 0; j < arg.size(); ++j) {
      out[j] = 0.5 * amplitude * (std::sin(arg[j]) - offset[j]);
    }
    return out;
  }
};

}  // namespace

MapInstance make_perturbed_isometry(const SpaceSpec& space_in, const SpaceSpec& space_out,
                                    const LinearOperator& u, double eps, std::uint64_t seed) {
  require_nonnegative(eps, "eps");
  if (!(u.domain == space_in) || !(u.codomain == space_out)) {
    throw Error(Errc::dimension_mismatch, "isometry does not act between the given spaces");
  }
  const auto probes = unit_sphere_sample(space_in, 256, seed ^ 0x9e3779b97f4a7c15ULL);
  const double defect = isometry_defect(u, probes);
  if (defect > 1e-9) {
    throw Error(Errc::check_failed, "operator is not a linear isometry (defect " +
                                        std::to_string(defect) + ")");
  }

  auto eta = std::make_shared<Perturbation>();
  const std::size_t m = space_out.dim();
  eta->freq = Matrix(m, space_in.dim());
  eta->phase = Vector(m);
  eta->offset = Vector(m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (Eigen::Index j = 0; j < eta->freq.rows(); ++j) {
    for (Eigen::Index i = 0; i < eta->freq.cols(); ++i) eta->freq(j, i) = gauss(rng);
    eta->phase[j] = angle(rng);
    eta->offset[j] = std::sin(eta->phase[j]);
  }
  // ||eta||_p <= amplitude * m^(1/p) = eps / 2.
  const double spread =
      space_out.p() == kInf ? 1.0 : std::pow(static_cast<double>(m), 1.0 / space_out.p());
  eta->amplitude = eps / (2.0 * spread);

  const Matrix um = u.matrix;
  MapInstance f{.id = "perturbed",
                .domain = space_in,
                .codomain = space_out,
                .eval = [um, eta](const Vector& x) -> Vector { return um * x + (*eta)(x); },
                .claimed_eps = eps,
                .claimed_delta = eps / 2.0,
                .target_subspace = Subspace(space_out, u.matrix),
                .reference = u};
  return f;
}

MapInstance make_linear_map(const LinearOperator& u) {
  const Matrix um = u.matrix;
  MapInstance f{.id = "linear",
                .domain = u.domain,
                .codomain = u.codomain,
                .eval = [um](const Vector& x) -> Vector { return um * x; },
                .claimed_eps = 0.0,
                .claimed_delta = 0.0,
                .target_subspace = Subspace(u.codomain, u.matrix),
                .reference = u};
  return f;
}

MapInstance normalize_origin(const MapInstance& f) {
  MapInstance g = f;
  const Vector shift = f(Vector::Zero(f.domain.dim()));
  auto inner = f.eval;
  g.eval = [inner, shift](const Vector& x) -> Vector { return inner(x) - shift; };
  return g;
}

LinearOperator random_coordinate_isometry(const SpaceSpec& domain, const SpaceSpec& codomain,
                                          std::uint64_t seed) {
  if (domain.dim() > codomain.dim()) {
    throw Error(Errc::dimension_mismatch, "cannot embed a larger space into a smaller one");
  }
  if (domain.dim() > 1 && domain.p() != codomain.p()) {
    throw Error(Errc::unsupported, "coordinate embeddings need equal exponents");
  }
  std::vector<std::size_t> slots(codomain.dim());
  for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::bernoulli_distribution coin(0.5);
  Matrix m = Matrix::Zero(codomain.dim(), domain.dim());
  for (std::size_t i = 0; i < domain.dim(); ++i) {
    m(static_cast<Eigen::Index>(slots[i]), static_cast<Eigen::Index>(i)) = coin(rng) ? 1.0 : -1.0;
  }
  return LinearOperator(std::move(m), domain, codomain, OperatorRole::isometry);
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {"hyers-ulam", "sharp-l1", "ramp-hilbert",
                                               "perturbed"};
  return ids;
}

namespace {

double need(const std::optional<double>& v, std::string_view id, const char* name) {
  if (!v) {
    throw Error(Errc::invalid_argument,
                "map '" + std::string(id) + "' requires --" + std::string(name));
  }
  return *v;
}

}  // namespace

MapInstance make_catalog_map(std::string_view id, const CatalogParams& params) {
  if (id == "hyers-ulam") return make_hyers_ulam(need(params.eps, id, "eps"));
  if (id == "sharp-l1") {
    return make_sharp_l1(need(params.eps, id, "eps"), need(params.delta, id, "delta"));
  }
  if (id == "ramp-hilbert") {
    return make_ramp_hilbert(need(params.eps, id, "eps"), need(params.delta, id, "delta"));
  }
  if (id == "perturbed") {
    const double eps = need(params.eps, id, "eps");
    const SpaceSpec space(params.dim, params.p);
    const LinearOperator u = random_coordinate_isometry(space, space, params.seed);
    return make_perturbed_isometry(space, space, u, eps, params.seed + 1);
  }
  throw Error(Errc::invalid_argument, "unknown map '" + std::string(id) + "'");
}

}  // namespace neariso
