#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace flexarm {

// Scalar rest-to-rest profile r(t) on [0, tf]; outside the interval the
// value is clamped to the endpoint and the derivatives are zero.
struct PathPoint {
    double r = 0.0, rd = 0.0, rdd = 0.0;
};

// R_d = (R_f - R_i) { t/T_f - sin(2 pi t / T_f) / 2 pi } + R_i
class Cycloid {
public:
    Cycloid() = default;
    Cycloid(double ri, double rf, double tf);
    PathPoint operator()(double t) const;
    double ri() const { return ri_; }
    double rf() const { return rf_; }
    double tf() const { return tf_; }

private:
    double ri_ = 0.0, rf_ = 0.0, tf_ = 1.0;
};

// C2 piecewise polynomial through N equally spaced interior knots with
// value/velocity/acceleration pinned at both ends: interior segments are
// the clamped cubic spline, the two end segments are quintics joined C2.
class KnotSpline {
public:
    KnotSpline() = default;
    KnotSpline(double ri, double rf, double tf, std::vector<double> interior_values);
    PathPoint operator()(double t) const;
    double ri() const { return ri_; }
    double rf() const { return rf_; }
    double tf() const { return tf_; }
    const std::vector<double>& knots() const { return values_; }

private:
    double ri_ = 0.0, rf_ = 0.0, tf_ = 1.0;
    std::vector<double> values_;             // interior knot values
    std::vector<std::array<double, 6>> seg_; // polynomial coefficients per segment
    double h_ = 1.0;                         // knot spacing
};

// Three-layer network: sigmoid hidden nodes feeding a cycloid output wrap.
// Free parameters are the steepnesses a_k (k=1..K) and weights w_k
// (k=1..K-1); w_K is fixed by the endpoint closure, the biases by the
// uniform schedule b_k = (1-k)/(1-K) * tf.
class AnnPath {
public:
    AnnPath() = default;
    AnnPath(double ri, double rf, double tf,
            std::vector<double> steepness, std::vector<double> weights);
    PathPoint operator()(double t) const;
    double ri() const { return ri_; }
    double rf() const { return rf_; }
    double tf() const { return tf_; }
    int hidden_width() const { return static_cast<int>(a_.size()); }
    const std::vector<double>& steepness() const { return a_; }
    const std::vector<double>& free_weights() const { return w_; }
    double closure_weight() const { return wK_; }
    double bias(int k) const; // k in [1, K]

private:
    double sum_output(double t, double& od, double& odd) const;
    double ri_ = 0.0, rf_ = 0.0, tf_ = 1.0;
    std::vector<double> a_; // K steepnesses
    std::vector<double> w_; // K-1 free weights
    double wK_ = 0.0;
};

using ScalarPath = std::variant<Cycloid, KnotSpline, AnnPath>;

PathPoint eval(const ScalarPath& p, double t);
double path_tf(const ScalarPath& p);
std::string family_name(const ScalarPath& p);

// Desired trajectories for the three rigid modes (theta, X~, Y~),
// sharing one travel time (in dimensionless time).
struct RigidTrajectory {
    std::array<ScalarPath, 3> comp{};
    double tf = 1.0;

    void eval(double t, Eigen::Vector3d& R, Eigen::Vector3d& Rd, Eigen::Vector3d& Rdd) const;
    Eigen::Vector3d initial() const;
    Eigen::Vector3d final() const;
};

// Plain-text serialization (one labeled parameter per line).
void save_trajectory(std::ostream& os, const RigidTrajectory& traj);
void save_trajectory(const std::string& path, const RigidTrajectory& traj);
RigidTrajectory load_trajectory(std::istream& is);
RigidTrajectory load_trajectory_file(const std::string& path);

} // namespace flexarm
