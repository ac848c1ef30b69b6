#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degeneration.hpp"
#include "embedding.hpp"
#include "error.hpp"

namespace okkit::flow {

using algebra::Complex;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct FlowConfig {
  double epsilon = 0.5;
  double delta = 1e-4;
  double rtol = 1e-10;
  double atol = 1e-12;
  double retraction_tol = 1e-10;
  int retraction_max_iter = 20;
  long max_steps = 200000;
  double alpha = 0.5;       // step damping min(1, (Re t)^alpha)
  double max_step = 0.02;   // before damping
  double chart_share = 0.3;
  double fd_step = 1e-5;
  std::uint64_t seed = 1;

  // Throws usage unless 0 < delta < epsilon < 1 and tolerances are positive.
  void validate() const;
};

// Affine chart of P^{N-1} x C: coordinate `chart` is set to one and dropped.
struct ChartPoint {
  int chart = 0;
  CVector w;  // N - 1 entries
  Complex t;
};

// Family realized in P^{N-1} x C via the level-one coordinates. Tangent
// vectors are N-vectors: chart coordinates followed by the t component.
class FamilyModel {
 public:
  // Needs the degree-one basis with every generator in level one.
  FamilyModel(std::shared_ptr<const okounkov::SagbiDatum> datum, const degeneration::FamilyPresentation& fam,
              embedding::VdBasis basis, double kahler_scale = 1.0);

  std::size_t coordinates() const noexcept { return basis_.size(); }  // N
  std::size_t rank() const noexcept { return basis_.rank; }           // n
  std::size_t relations() const noexcept { return constraints_.size(); }
  const embedding::VdBasis& basis() const noexcept { return basis_; }
  const okounkov::SagbiDatum& datum() const noexcept { return *datum_; }
  double kahler_scale() const noexcept { return scale_; }

  std::vector<Complex> homogeneous(const ChartPoint& p) const;
  ChartPoint to_chart(const std::vector<Complex>& z, Complex t, int chart) const;
  // Chart of the largest-modulus coordinate.
  ChartPoint to_chart(const embedding::ProjectivePoint& p) const;
  ChartPoint embed(const std::vector<Complex>& x, Complex t) const;

  CVector constraints(const ChartPoint& p) const;
  CMatrix jacobian(const ChartPoint& p) const;  // relations x N
  double relative_residual(const ChartPoint& p) const;
  double initial_residual(const ChartPoint& p) const;  // g~ at t = 0 on the chart point's coordinates
  CMatrix metric(const ChartPoint& p) const;    // N x N: scaled chart Fubini-Study plus identity on t
  std::vector<double> moment(const ChartPoint& p) const;

 private:
  std::shared_ptr<const okounkov::SagbiDatum> datum_;
  embedding::VdBasis basis_;
  double scale_;
  std::vector<algebra::CompiledPolynomial> constraints_;
};

struct TangentFrame {
  CMatrix complex_frame;  // columns metric-orthonormal over C
  CMatrix real_frame;     // columns q_j, i q_j: orthonormal for Re of the metric
  double condition = 1;
  bool ill_conditioned = false;  // condition > 1e8
};

// Frame of T(total space); throws singular-point on a rank drop.
TangentFrame tangent_frame(const FamilyModel& m, const ChartPoint& p);
// Frame of the fiber through p, as (N-1)-vectors in chart coordinates.
TangentFrame fiber_frame(const FamilyModel& m, const ChartPoint& p);

// V = -P e_t / |P e_t|^2; throws critical-point when |P e_t| <= 1e-10.
CVector gradient_hamiltonian(const FamilyModel& m, const ChartPoint& p, bool* ill_conditioned = nullptr);

// Gauss-Newton onto the fiber at fixed t; throws retraction-diverged.
ChartPoint retract(const FamilyModel& m, ChartPoint p, const FlowConfig& cfg);

struct Sample {
  double s = 0;
  Complex t;
  int chart = 0;
  double residual = 0;
  double im_pi = 0;
  double lin_err = 0;
  std::vector<double> moment;
};

struct StepRecord {
  double h = 0;
  int chart = 0;      // chart after the step
  bool stop = false;  // the step lands exactly on a stop
};

struct FlowResult {
  bool ok = true;
  ErrorCode failure = ErrorCode::Verification;
  std::string message;

  ChartPoint start;
  std::vector<ChartPoint> terminals;  // one per requested stop
  std::vector<Sample> samples;        // trajectory, starting at s = 0
  std::vector<StepRecord> plan;

  // Filled by integrable_system_eval.
  std::vector<double> F_delta, F_half, F;
  double convergence = 0;

  double max_im_pi = 0;
  double max_lin_err = 0;
  double max_normalization_error = 0;  // |dRe pi[V] + 1|
  double max_residual = 0;
  long steps = 0;
  long rejected = 0;
  bool ill_conditioned = false;
};

// Integrates V from `start` (on the fiber over Re t = epsilon) through the
// decreasing stops. With `replay`, reuses the step sizes and charts of a
// previous run so the terminal map is smooth in the start point.
FlowResult flow_to(const FamilyModel& m, const ChartPoint& start, const FlowConfig& cfg,
                   const std::vector<double>& stops, const std::vector<StepRecord>* replay = nullptr);

// F(x) = moment of the flowed point, extrapolated as 2 F(delta/2) - F(delta).
FlowResult integrable_system_eval(const FamilyModel& m, const std::vector<Complex>& x, const FlowConfig& cfg);

// Matrix of {F_i, F_j} = omega(xi_{F_j}, xi_{F_i}) at x.
Eigen::MatrixXd poisson_matrix(const FamilyModel& m, const std::vector<Complex>& x, const FlowConfig& cfg);
double poisson_bracket(const FamilyModel& m, std::size_t i, std::size_t j, const std::vector<Complex>& x,
                       const FlowConfig& cfg);

// |omega_delta(u', v') - omega_epsilon(u, v)| for u, v given by real
// coefficients in the fiber frame at the embedded start point.
double symplectic_residual(const FamilyModel& m, const std::vector<Complex>& x, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v, const FlowConfig& cfg);

// Symplectic form Im(u* H v) on fiber tangent vectors in chart coordinates.
double fiber_omega(const FamilyModel& m, const ChartPoint& p, const CVector& u, const CVector& v);

// Runs integrable_system_eval over points in parallel, results in input order.
std::vector<FlowResult> evaluate_batch(const FamilyModel& m, const std::vector<std::vector<Complex>>& points,
                                       const FlowConfig& cfg);

}  // namespace okkit::flow
