#include "flexarm/trajectory.hpp"

#include "flexarm/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace flexarm {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}
} // namespace

// ---------------------------------------------------------------- Cycloid

Cycloid::Cycloid(double ri, double rf, double tf) : ri_(ri), rf_(rf), tf_(tf) {
    if (!(tf > 0.0)) throw ValidationError("cycloid: travel time must be > 0");
}

PathPoint Cycloid::operator()(double t) const {
    if (t <= 0.0) return {ri_, 0.0, 0.0};
    if (t >= tf_) return {rf_, 0.0, 0.0};
    const double dr = rf_ - ri_;
    const double w = kTwoPi / tf_;
    PathPoint p;
    p.r = dr * (t / tf_ - std::sin(w * t) / kTwoPi) + ri_;
    p.rd = dr / tf_ * (1.0 - std::cos(w * t));
    p.rdd = dr / tf_ * w * std::sin(w * t);
    return p;
}

// -------------------------------------------------------------- KnotSpline

KnotSpline::KnotSpline(double ri, double rf, double tf, std::vector<double> interior_values)
    : ri_(ri), rf_(rf), tf_(tf), values_(std::move(interior_values)) {
    if (!(tf > 0.0)) throw ValidationError("spline: travel time must be > 0");
    const int N = static_cast<int>(values_.size());
    if (N < 1) throw ValidationError("spline: at least one interior knot required");

    const int n = N + 1; // segment count
    h_ = tf_ / n;
    std::vector<double> y(n + 1);
    y[0] = ri_;
    for (int i = 0; i < N; ++i) y[i + 1] = values_[i];
    y[n] = rf_;

    // clamped cubic spline (zero end slopes): tridiagonal solve for the
    // knot second derivatives
    std::vector<double> diag(n + 1), upper(n + 1), lower(n + 1), rhs(n + 1), M(n + 1);
    diag[0] = 2.0 * h_;
    upper[0] = h_;
    rhs[0] = 6.0 * (y[1] - y[0]) / h_;
    for (int i = 1; i < n; ++i) {
        lower[i] = h_;
        diag[i] = 4.0 * h_;
        upper[i] = h_;
        rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h_ - (y[i] - y[i - 1]) / h_);
    }
    lower[n] = h_;
    diag[n] = 2.0 * h_;
    rhs[n] = 6.0 * (-(y[n] - y[n - 1]) / h_);
    for (int i = 1; i <= n; ++i) { // Thomas
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    M[n] = rhs[n] / diag[n];
    for (int i = n - 1; i >= 0; --i) M[i] = (rhs[i] - upper[i] * M[i + 1]) / diag[i];

    seg_.assign(n, {});
    for (int i = 0; i < n; ++i) {
        seg_[i][0] = y[i];
        seg_[i][1] = (y[i + 1] - y[i]) / h_ - h_ * (2.0 * M[i] + M[i + 1]) / 6.0;
        seg_[i][2] = M[i] / 2.0;
        seg_[i][3] = (M[i + 1] - M[i]) / (6.0 * h_);
    }

    // end segments become quintics so acceleration also vanishes at the ends
    auto quintic = [&](double p0, double v0, double acc0, double p1, double v1, double acc1) {
        const double P = (p1 - p0 - v0 * h_ - 0.5 * acc0 * h_ * h_) / (h_ * h_ * h_);
        const double V = (v1 - v0 - acc0 * h_) / (h_ * h_);
        const double A = (acc1 - acc0) / h_;
        std::array<double, 6> cchar{};
        cchar[0] = p0;
        cchar[1] = v0;
        cchar[2] = 0.5 * acc0;
        cchar[3] = 10.0 * P - 4.0 * V + 0.5 * A;
        cchar[4] = (-15.0 * P + 7.0 * V - A) / h_;
        cchar[5] = (6.0 * P - 3.0 * V + 0.5 * A) / (h_ * h_);
        return cchar;
    };
    // derivatives the interior spline prescribes at t_1 and t_{n-1}
    const double v1 = seg_[1][1], a1v = M[1];
    seg_[0] = quintic(y[0], 0.0, 0.0, y[1], v1, a1v);
    const double vn1 = seg_[n - 1][1], an1 = M[n - 1];
    seg_[n - 1] = quintic(y[n - 1], vn1, an1, y[n], 0.0, 0.0);
}

PathPoint KnotSpline::operator()(double t) const {
    if (t <= 0.0) return {ri_, 0.0, 0.0};
    if (t >= tf_) return {rf_, 0.0, 0.0};
    const int n = static_cast<int>(seg_.size());
    int i = std::min(static_cast<int>(t / h_), n - 1);
    const double dt = t - static_cast<double>(i) * h_;
    const auto& c = seg_[i];
    PathPoint p;
    p.r = c[0] + dt * (c[1] + dt * (c[2] + dt * (c[3] + dt * (c[4] + dt * c[5]))));
    p.rd = c[1] + dt * (2.0 * c[2] + dt * (3.0 * c[3] + dt * (4.0 * c[4] + dt * 5.0 * c[5])));
    p.rdd = 2.0 * c[2] + dt * (6.0 * c[3] + dt * (12.0 * c[4] + dt * 20.0 * c[5]));
    return p;
}

// ----------------------------------------------------------------- AnnPath

AnnPath::AnnPath(double ri, double rf, double tf,
                 std::vector<double> steepness, std::vector<double> weights)
    : ri_(ri), rf_(rf), tf_(tf), a_(std::move(steepness)), w_(std::move(weights)) {
    if (!(tf > 0.0)) throw ValidationError("ann: travel time must be > 0");
    const int K = static_cast<int>(a_.size());
    if (K < 2) throw ValidationError("ann: hidden width must be at least 2");
    if (static_cast<int>(w_.size()) != K - 1)
        throw ValidationError("ann: expected K-1 free weights");
    for (double a : a_)
        if (!(a > 0.0)) throw ValidationError("ann: steepness values must be > 0");

    // endpoint closure for the last weight
    auto y_at_tf = [&](int k) {
        const double b = bias(k + 1);
        return stable_sigmoid(a_[k] * (tf_ - b)) - stable_sigmoid(-a_[k] * b);
    };
    double acc = 0.0;
    for (int k = 0; k < K - 1; ++k) acc += w_[k] * y_at_tf(k);
    const double yK = y_at_tf(K - 1);
    if (std::abs(yK) < 1e-12)
        throw NumericalError("ann: degenerate closure, y_K(T_f) ~ 0");
    wK_ = (1.0 - acc) / yK;
}

double AnnPath::bias(int k) const {
    const int K = static_cast<int>(a_.size());
    return (1.0 - k) / (1.0 - static_cast<double>(K)) * tf_;
}

double AnnPath::sum_output(double t, double& od, double& odd) const {
    const int K = static_cast<int>(a_.size());
    double o = 0.0;
    od = odd = 0.0;
    for (int k = 0; k < K; ++k) {
        const double wk = (k < K - 1) ? w_[k] : wK_;
        const double b = bias(k + 1);
        const double s = stable_sigmoid(a_[k] * (t - b));
        const double y = s - stable_sigmoid(-a_[k] * b);
        const double yd = a_[k] * s * (1.0 - s);
        const double ydd = a_[k] * a_[k] * s * (1.0 - s) * (1.0 - 2.0 * s);
        o += wk * y;
        od += wk * yd;
        odd += wk * ydd;
    }
    return o;
}

PathPoint AnnPath::operator()(double t) const {
    if (t <= 0.0) return {ri_, 0.0, 0.0};
    if (t >= tf_) return {rf_, 0.0, 0.0};
    double od = 0.0, odd = 0.0;
    const double o = sum_output(t, od, odd);
    const double dr = rf_ - ri_;
    PathPoint p;
    p.r = dr * (o - std::sin(kTwoPi * o) / kTwoPi) + ri_;
    p.rd = dr * (1.0 - std::cos(kTwoPi * o)) * od;
    p.rdd = dr * (kTwoPi * std::sin(kTwoPi * o) * od * od
                  + (1.0 - std::cos(kTwoPi * o)) * odd);
    return p;
}

// ---------------------------------------------------------------- variant

PathPoint eval(const ScalarPath& p, double t) {
    return std::visit([&](const auto& f) { return f(t); }, p);
}

double path_tf(const ScalarPath& p) {
    return std::visit([](const auto& f) { return f.tf(); }, p);
}

std::string family_name(const ScalarPath& p) {
    if (std::holds_alternative<Cycloid>(p)) return "cycloid";
    if (std::holds_alternative<KnotSpline>(p)) return "spline";
    return "ann";
}

void RigidTrajectory::eval(double t, Eigen::Vector3d& R, Eigen::Vector3d& Rd,
                           Eigen::Vector3d& Rdd) const {
    for (int i = 0; i < 3; ++i) {
        const PathPoint p = flexarm::eval(comp[i], t);
        R(i) = p.r;
        Rd(i) = p.rd;
        Rdd(i) = p.rdd;
    }
}

Eigen::Vector3d RigidTrajectory::initial() const {
    Eigen::Vector3d R, Rd, Rdd;
    eval(0.0, R, Rd, Rdd);
    return R;
}

Eigen::Vector3d RigidTrajectory::final() const {
    Eigen::Vector3d R, Rd, Rdd;
    eval(tf, R, Rd, Rdd);
    return R;
}

// ----------------------------------------------------------- serialization

namespace {
const char* kCoordNames[3] = {"theta", "x", "y"};

void write_values(std::ostream& os, const char* label, const std::vector<double>& v) {
    os << label;
    for (double x : v) os << ' ' << x;
    os << '\n';
}
} // namespace

void save_trajectory(std::ostream& os, const RigidTrajectory& traj) {
    os.precision(17);
    os << "# flexarm-trajectory v1\n";
    os << "tf " << traj.tf << '\n';
    for (int i = 0; i < 3; ++i) {
        const auto& c = traj.comp[i];
        os << "begin " << kCoordNames[i] << '\n';
        os << "family " << family_name(c) << '\n';
        std::visit([&](const auto& f) {
            os << "ri " << f.ri() << '\n';
            os << "rf " << f.rf() << '\n';
        }, c);
        if (const auto* s = std::get_if<KnotSpline>(&c)) {
            write_values(os, "knots", s->knots());
        } else if (const auto* a = std::get_if<AnnPath>(&c)) {
            write_values(os, "steepness", a->steepness());
            write_values(os, "weights", a->free_weights());
        }
        os << "end\n";
    }
}

void save_trajectory(const std::string& path, const RigidTrajectory& traj) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    save_trajectory(os, traj);
    if (!os.good()) throw IoError("write failed: " + path);
}

RigidTrajectory load_trajectory(std::istream& is) {
    RigidTrajectory traj;
    traj.tf = -1.0;
    std::string line;
    int coord = -1;
    std::string family;
    double ri = 0.0, rf = 0.0;
    std::vector<double> knots, steep, weights;
    bool have[3] = {false, false, false};

    auto finish_coord = [&]() {
        if (coord < 0) return;
        if (family == "cycloid") traj.comp[coord] = Cycloid(ri, rf, traj.tf);
        else if (family == "spline") traj.comp[coord] = KnotSpline(ri, rf, traj.tf, knots);
        else if (family == "ann") traj.comp[coord] = AnnPath(ri, rf, traj.tf, steep, weights);
        else throw IoError("trajectory file: unknown family '" + family + "'");
        have[coord] = true;
        coord = -1;
    };

    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "tf") ls >> traj.tf;
        else if (key == "begin") {
            std::string name;
            ls >> name;
            family.clear();
            knots.clear(); steep.clear(); weights.clear();
            ri = rf = 0.0;
            coord = -1;
            for (int i = 0; i < 3; ++i)
                if (name == kCoordNames[i]) coord = i;
            if (coord < 0) throw IoError("trajectory file: unknown coordinate '" + name + "'");
        } else if (key == "family") ls >> family;
        else if (key == "ri") ls >> ri;
        else if (key == "rf") ls >> rf;
        else if (key == "knots" || key == "steepness" || key == "weights") {
            std::vector<double>& dst = key == "knots" ? knots
                                      : key == "steepness" ? steep : weights;
            double v;
            while (ls >> v) dst.push_back(v);
        } else if (key == "end") finish_coord();
        else throw IoError("trajectory file: unknown key '" + key + "'");
    }
    if (traj.tf <= 0.0) throw IoError("trajectory file: missing or invalid tf");
    if (!(have[0] && have[1] && have[2]))
        throw IoError("trajectory file: all three coordinates must be present");
    return traj;
}

RigidTrajectory load_trajectory_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return load_trajectory(is);
}

} // namespace flexarm
