#include "flow.hpp"

#include <array>
#include <cmath>

#include "parallel.hpp"

namespace okkit::flow {

namespace {

// Dormand-Prince 5(4).
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr double kB4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

constexpr double kSingular = 1e-13;
constexpr double kIllConditioned = 1e8;

std::vector<int> others(std::size_t n, int chart) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(n); ++i)
    if (i != chart) out.push_back(i);
  return out;
}

// Kernel of J (rows x cols) with the given expected dimension, made
// orthonormal for H.
TangentFrame kernel_frame(const CMatrix& J, const CMatrix& H, std::size_t dim) {
  const auto cols = static_cast<std::size_t>(H.rows());
  const std::size_t rank = cols - dim;
  CMatrix B;
  TangentFrame f;
  if (rank == 0) {
    B = CMatrix::Identity(cols, cols);
  } else {
    if (static_cast<std::size_t>(J.rows()) < rank)
      throw Error(ErrorCode::SingularPoint, "fewer relations than the codimension");
    Eigen::JacobiSVD<CMatrix> svd(J, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = sv(0), low = sv(rank - 1);
    if (low <= kSingular * std::max(1.0, top))
      throw Error(ErrorCode::SingularPoint, "constraint Jacobian drops rank (sigma = " + std::to_string(low) + ")");
    f.condition = top / low;
    f.ill_conditioned = f.condition > kIllConditioned;
    B = svd.matrixV().rightCols(dim);
  }
  CMatrix gram = B.adjoint() * H * B;
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularPoint, "metric is not positive on the tangent space");
  f.complex_frame = llt.matrixL().solve(B.adjoint()).adjoint();
  f.real_frame.resize(cols, 2 * dim);
  for (std::size_t j = 0; j < dim; ++j) {
    f.real_frame.col(2 * j) = f.complex_frame.col(j);
    f.real_frame.col(2 * j + 1) = Complex(0, 1) * f.complex_frame.col(j);
  }
  return f;
}

ChartPoint from_state(int chart, const CVector& y) {
  const auto n = y.size();
  return {chart, y.head(n - 1), y(n - 1)};
}

CVector to_state(const ChartPoint& p) {
  CVector y(p.w.size() + 1);
  y.head(p.w.size()) = p.w;
  y(p.w.size()) = p.t;
  return y;
}

int largest(const std::vector<Complex>& z) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(z.size()); ++i)
    if (std::abs(z[i]) > std::abs(z[best])) best = i;
  return best;
}

std::vector<double> extrapolate(const std::vector<double>& full, const std::vector<double>& half) {
  std::vector<double> out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[i] = 2 * half[i] - full[i];
  return out;
}

// Antisymmetric by construction: swapping c and d negates the sum term by term.
double bilinear(const Eigen::MatrixXd& W, const Eigen::VectorXd& c, const Eigen::VectorXd& d) {
  double sum = 0;
  for (Eigen::Index a = 0; a < W.rows(); ++a)
    for (Eigen::Index b = a + 1; b < W.cols(); ++b) sum += W(a, b) * (c(a) * d(b) - c(b) * d(a));
  return sum;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(0 < delta && delta < epsilon && epsilon < 1))
    throw Error(ErrorCode::Usage, "flow needs 0 < delta < epsilon < 1");
  if (!(rtol > 0 && atol > 0 && retraction_tol > 0 && fd_step > 0 && max_step > 0))
    throw Error(ErrorCode::Usage, "flow tolerances must be positive");
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorCode::Usage, "damping exponent must lie in (0, 1)");
  if (!(chart_share > 0 && chart_share < 1)) throw Error(ErrorCode::Usage, "chart share must lie in (0, 1)");
  if (retraction_max_iter < 1 || max_steps < 1) throw Error(ErrorCode::Usage, "iteration limits must be positive");
}

FamilyModel::FamilyModel(std::shared_ptr<const okounkov::SagbiDatum> datum,
                         const degeneration::FamilyPresentation& fam, embedding::VdBasis basis, double kahler_scale)
    : datum_(std::move(datum)), basis_(std::move(basis)), scale_(kahler_scale) {
  const auto& gens = datum_->generators();
  if (basis_.degree != 1 || basis_.size() != gens.size())
    throw Error(ErrorCode::Unsupported, "the flow runs on the degree-one embedding; every generator must be in level one");
  if (!(scale_ > 0)) throw Error(ErrorCode::Usage, "Kahler scale must be positive");
  for (const auto& g : fam.family) constraints_.emplace_back(algebra::ComplexPolynomial::from(g));
}

std::vector<Complex> FamilyModel::homogeneous(const ChartPoint& p) const {
  std::vector<Complex> z(coordinates());
  auto idx = others(coordinates(), p.chart);
  z[p.chart] = 1;
  for (std::size_t j = 0; j < idx.size(); ++j) z[idx[j]] = p.w(j);
  return z;
}

ChartPoint FamilyModel::to_chart(const std::vector<Complex>& z, Complex t, int chart) const {
  if (std::abs(z.at(chart)) == 0) throw Error(ErrorCode::Chart, "chart coordinate vanishes");
  auto idx = others(coordinates(), chart);
  ChartPoint p{chart, CVector(idx.size()), t};
  for (std::size_t j = 0; j < idx.size(); ++j) p.w(j) = z[idx[j]] / z[chart];
  return p;
}

ChartPoint FamilyModel::to_chart(const embedding::ProjectivePoint& p) const {
  return to_chart(p.z, p.t, largest(p.z));
}

ChartPoint FamilyModel::embed(const std::vector<Complex>& x, Complex t) const {
  return to_chart(embedding::embed_point(x, *datum_, basis_, t));
}

CVector FamilyModel::constraints(const ChartPoint& p) const {
  auto z = homogeneous(p);
  z.push_back(p.t);
  CVector g(constraints_.size());
  for (std::size_t k = 0; k < constraints_.size(); ++k) g(k) = constraints_[k].value(z);
  return g;
}

CMatrix FamilyModel::jacobian(const ChartPoint& p) const {
  const std::size_t N = coordinates();
  auto z = homogeneous(p);
  z.push_back(p.t);
  auto idx = others(N, p.chart);
  CMatrix J(constraints_.size(), N);
  std::vector<Complex> grad;
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    constraints_[k].value_and_gradient(z, grad);
    for (std::size_t j = 0; j < idx.size(); ++j) J(k, j) = grad[idx[j]];
    J(k, N - 1) = grad[N];
  }
  return J;
}

double FamilyModel::relative_residual(const ChartPoint& p) const {
  auto z = homogeneous(p);
  z.push_back(p.t);
  double worst = 0;
  for (const auto& g : constraints_) {
    double scale = g.magnitude(z);
    if (scale > 0) worst = std::max(worst, std::abs(g.value(z)) / scale);
  }
  return worst;
}

double FamilyModel::initial_residual(const ChartPoint& p) const {
  auto z = homogeneous(p);
  z.push_back(0.0);
  double worst = 0;
  for (const auto& g : constraints_) {
    double scale = g.magnitude(z);
    if (scale > 0) worst = std::max(worst, std::abs(g.value(z)) / scale);
  }
  return worst;
}

CMatrix FamilyModel::metric(const ChartPoint& p) const {
  const auto m = p.w.size();
  double r = 1 + p.w.squaredNorm();
  CMatrix H = CMatrix::Zero(m + 1, m + 1);
  H.topLeftCorner(m, m) = scale_ * (r * CMatrix::Identity(m, m) - p.w * p.w.adjoint()) / (r * r);
  H(m, m) = 1;
  return H;
}

std::vector<double> FamilyModel::moment(const ChartPoint& p) const {
  return embedding::toric_moment(homogeneous(p), basis_);
}

TangentFrame tangent_frame(const FamilyModel& m, const ChartPoint& p) {
  return kernel_frame(m.jacobian(p), m.metric(p), m.rank() + 1);
}

TangentFrame fiber_frame(const FamilyModel& m, const ChartPoint& p) {
  const auto k = p.w.size();
  CMatrix J = m.jacobian(p).leftCols(k);
  CMatrix H = m.metric(p).topLeftCorner(k, k);
  return kernel_frame(J, H, m.rank());
}

CVector gradient_hamiltonian(const FamilyModel& m, const ChartPoint& p, bool* ill_conditioned) {
  auto f = tangent_frame(m, p);
  if (ill_conditioned) *ill_conditioned = *ill_conditioned || f.ill_conditioned;
  // H e_t = e_t, so Q* H e_t is the conjugated t-row of Q.
  CVector c = f.complex_frame.bottomRows(1).adjoint();
  double norm2 = c.squaredNorm();
  if (std::sqrt(norm2) <= 1e-10) throw Error(ErrorCode::CriticalPoint, "projected gradient of Re(t) vanishes");
  return -(f.complex_frame * c) / norm2;
}

ChartPoint retract(const FamilyModel& m, ChartPoint p, const FlowConfig& cfg) {
  if (m.relations() == 0) return p;
  const auto k = p.w.size();
  bool converged = false;
  for (int it = 0; it < cfg.retraction_max_iter; ++it) {
    double res = m.relative_residual(p);
    if (!std::isfinite(res)) break;
    if (converged || res == 0) return p;
    // One extra Newton step after convergence keeps the map smooth.
    converged = res < cfg.retraction_tol;
    CMatrix J = m.jacobian(p).leftCols(k);
    CVector g = m.constraints(p);
    Eigen::JacobiSVD<CMatrix> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    p.w -= svd.solve(g);
  }
  double res = m.relative_residual(p);
  if (res < cfg.retraction_tol) return p;
  throw Error(ErrorCode::RetractionDiverged, "retraction did not converge (residual " + std::to_string(res) + ")");
}

FlowResult flow_to(const FamilyModel& m, const ChartPoint& start, const FlowConfig& cfg,
                   const std::vector<double>& stops, const std::vector<StepRecord>* replay) {
  FlowResult r;
  r.start = start;
  const double eps = start.t.real();
  const auto N = m.coordinates();
  ChartPoint cur = start;
  double s = 0;

  auto record = [&](const ChartPoint& p, double at) {
    Sample smp{at, p.t, p.chart, m.relative_residual(p), std::abs(p.t.imag()), std::abs(p.t.real() - (eps - at)),
               m.moment(p)};
    r.max_im_pi = std::max(r.max_im_pi, smp.im_pi);
    r.max_lin_err = std::max(r.max_lin_err, smp.lin_err);
    r.max_residual = std::max(r.max_residual, smp.residual);
    r.samples.push_back(std::move(smp));
  };
  auto field = [&](const ChartPoint& p) { return gradient_hamiltonian(m, p, &r.ill_conditioned); };

  try {
    for (double stop : stops)
      if (!(stop > 0 && stop < eps)) throw Error(ErrorCode::Usage, "flow stops must lie in (0, start)");
    record(cur, 0);
    CVector k1 = field(cur);
    r.max_normalization_error = std::abs(k1(N - 1).real() + 1);
    double h = std::min(cfg.max_step, 1e-3);
    std::size_t next_stop = 0, replay_at = 0;
    while (next_stop < stops.size()) {
      if (r.steps + r.rejected >= cfg.max_steps)
        throw Error(ErrorCode::StepLimit, "step limit reached at t = " + std::to_string(cur.t.real()));
      const double target = eps - stops[next_stop];
      bool hits = false;
      int next_chart = cur.chart;
      if (replay) {
        if (replay_at >= replay->size()) throw Error(ErrorCode::StepLimit, "replay plan exhausted");
        const auto& rec = (*replay)[replay_at++];
        h = rec.h;
        hits = rec.stop;
        next_chart = rec.chart;
      } else {
        double damp = std::min(1.0, std::pow(std::max(cur.t.real(), 0.0), cfg.alpha));
        h = std::min({h, cfg.max_step * damp, target - s});
        hits = h == target - s;
      }

      CVector y = to_state(cur);
      std::array<CVector, 7> k;
      k[0] = k1;
      CVector y5, y4;
      double err = 0;
      std::optional<ChartPoint> next;
      try {
        for (int st = 1; st < 7; ++st) {
          CVector yi = y;
          for (int j = 0; j < st; ++j)
            if (kA[st][j] != 0) yi += h * kA[st][j] * k[j];
          k[st] = field(from_state(cur.chart, yi));
        }
        y5 = y;
        y4 = y;
        for (int st = 0; st < 7; ++st) {
          y5 += h * kB5[st] * k[st];
          y4 += h * kB4[st] * k[st];
        }
        for (Eigen::Index i = 0; i < y.size(); ++i) {
          double sc = cfg.atol + cfg.rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
          err = std::max(err, std::abs(y5(i) - y4(i)) / sc);
        }
        if (!std::isfinite(err)) throw Error(ErrorCode::SingularPoint, "non-finite step");
        if (replay || err <= 1) next = retract(m, from_state(cur.chart, y5), cfg);
      } catch (const Error& e) {
        const auto c = e.code();
        bool recoverable = c == ErrorCode::SingularPoint || c == ErrorCode::CriticalPoint ||
                           c == ErrorCode::RetractionDiverged;
        if (replay || !recoverable || h < 1e-14) throw;
        h *= 0.25;
        ++r.rejected;
        continue;
      }
      if (!next) {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        ++r.rejected;
        continue;
      }

      auto z = m.homogeneous(*next);
      if (!replay) {
        int big = largest(z);
        if (std::abs(z[next->chart]) < cfg.chart_share * std::abs(z[big])) next_chart = big;
        else next_chart = next->chart;
      }
      if (next_chart != next->chart) next = m.to_chart(z, next->t, next_chart);

      cur = *next;
      s = hits ? target : s + h;
      ++r.steps;
      r.plan.push_back({h, cur.chart, hits});
      record(cur, s);
      k1 = field(cur);
      r.max_normalization_error = std::max(r.max_normalization_error, std::abs(k1(N - 1).real() + 1));
      if (hits) {
        r.terminals.push_back(cur);
        ++next_stop;
      }
      if (!replay) h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-12), -0.2)));
    }
  } catch (const Error& e) {
    r.ok = false;
    r.failure = e.code();
    r.message = e.what();
  }
  return r;
}

namespace {

std::vector<double> stops_for(const FlowConfig& cfg) { return {cfg.delta, cfg.delta / 2}; }

void finish(const FamilyModel& m, FlowResult& r) {
  if (!r.ok) return;
  r.F_delta = m.moment(r.terminals.at(0));
  r.F_half = m.moment(r.terminals.at(1));
  r.F = extrapolate(r.F_delta, r.F_half);
  r.convergence = 0;
  for (std::size_t i = 0; i < r.F.size(); ++i)
    r.convergence = std::max(r.convergence, std::abs(r.F_half[i] - r.F_delta[i]));
}

ChartPoint start_point(const FamilyModel& m, const std::vector<Complex>& x, const FlowConfig& cfg) {
  return retract(m, m.embed(x, cfg.epsilon), cfg);
}

// Fourth-order central stencil in the step h.
template <class Value, class Fn>
Value central_difference(Fn&& f, double h) {
  Value a = f(2 * h), b = f(h), c = f(-h), d = f(-2 * h);
  return (8 * (b - c) - (a - d)) / (12 * h);
}

FlowResult replay_from(const FamilyModel& m, const ChartPoint& p, const FlowConfig& cfg,
                       const std::vector<double>& stops, const FlowResult& central) {
  auto r = flow_to(m, p, cfg, stops, &central.plan);
  if (!r.ok) throw Error(r.failure, "perturbed replay failed: " + r.message);
  return r;
}

}  // namespace

FlowResult integrable_system_eval(const FamilyModel& m, const std::vector<Complex>& x, const FlowConfig& cfg) {
  cfg.validate();
  ChartPoint start;
  try {
    start = start_point(m, x, cfg);
  } catch (const Error& e) {
    FlowResult r;
    r.ok = false;
    r.failure = e.code();
    r.message = e.what();
    return r;
  }
  auto r = flow_to(m, start, cfg, stops_for(cfg));
  finish(m, r);
  return r;
}

double fiber_omega(const FamilyModel& m, const ChartPoint& p, const CVector& u, const CVector& v) {
  const auto k = p.w.size();
  CMatrix H = m.metric(p).topLeftCorner(k, k);
  return u.dot(H * v).imag();
}

Eigen::MatrixXd poisson_matrix(const FamilyModel& m, const std::vector<Complex>& x, const FlowConfig& cfg) {
  auto central = integrable_system_eval(m, x, cfg);
  if (!central.ok) throw Error(central.failure, central.message);
  const auto n = m.rank();
  auto frame = fiber_frame(m, central.start);
  const auto dim = static_cast<Eigen::Index>(2 * n);
  const double h = cfg.fd_step;

  auto F_at = [&](const CVector& offset) {
    ChartPoint p = central.start;
    p.w += offset;
    auto r = replay_from(m, retract(m, p, cfg), cfg, stops_for(cfg), central);
    auto F = extrapolate(m.moment(r.terminals.at(0)), m.moment(r.terminals.at(1)));
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(F.data(), static_cast<Eigen::Index>(F.size())));
  };
  Eigen::MatrixXd dF(n, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    CVector dir = frame.real_frame.col(a);
    dF.col(a) = central_difference<Eigen::VectorXd>([&](double s) { return F_at(s * dir); }, h);
  }

  Eigen::MatrixXd W(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      W(a, b) = fiber_omega(m, central.start, frame.real_frame.col(a), frame.real_frame.col(b));
  W = (W - W.transpose()) / 2;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(W.transpose());
  lu.setThreshold(1e-10);
  if (lu.rank() < dim) throw Error(ErrorCode::DegenerateForm, "symplectic form is degenerate on the fiber frame");
  // omega(xi_f, .) = df, so W^T xi_f = df.
  Eigen::MatrixXd xi = lu.solve(dF.transpose());

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) B(i, j) = bilinear(W, xi.col(j), xi.col(i));
  return B;
}

double poisson_bracket(const FamilyModel& m, std::size_t i, std::size_t j, const std::vector<Complex>& x,
                       const FlowConfig& cfg) {
  if (i >= m.rank() || j >= m.rank()) throw Error(ErrorCode::Dimension, "bracket index out of range");
  return poisson_matrix(m, x, cfg)(i, j);
}

double symplectic_residual(const FamilyModel& m, const std::vector<Complex>& x, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v, const FlowConfig& cfg) {
  cfg.validate();
  const auto dim = static_cast<Eigen::Index>(2 * m.rank());
  if (u.size() != dim || v.size() != dim) throw Error(ErrorCode::Dimension, "tangent coefficients have wrong length");
  auto start = start_point(m, x, cfg);
  const std::vector<double> stops{cfg.delta};
  auto central = flow_to(m, start, cfg, stops);
  if (!central.ok) throw Error(central.failure, central.message);
  auto frame = fiber_frame(m, start);
  CVector U = frame.real_frame * u.cast<Complex>();
  CVector V = frame.real_frame * v.cast<Complex>();
  const double h = cfg.fd_step;

  auto push = [&](const CVector& dir) -> CVector {
    return central_difference<CVector>(
        [&](double s) {
          ChartPoint p = start;
          p.w += s * dir;
          return CVector(replay_from(m, retract(m, p, cfg), cfg, stops, central).terminals.at(0).w);
        },
        h);
  };
  const auto& end = central.terminals.at(0);
  double before = fiber_omega(m, start, U, V);
  double after = fiber_omega(m, end, push(U), push(V));
  return std::abs(after - before);
}

std::vector<FlowResult> evaluate_batch(const FamilyModel& m, const std::vector<std::vector<Complex>>& points,
                                       const FlowConfig& cfg) {
  cfg.validate();
  std::vector<FlowResult> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = integrable_system_eval(m, points[i], cfg); });
  return out;
}

}  // namespace okkit::flow
