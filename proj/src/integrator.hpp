#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>

#include "errors.hpp"

namespace sqpd {

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_init = 0.0;  // 0: choose automatically
    double h_max = 0.0;   // 0: unbounded
    long max_steps = 100000000;
};

struct IntegratorStats {
    long steps = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

/// Dormand-Prince 5(4) embedded Runge-Kutta with the classic quartic dense
/// output. StateT is an Eigen vector (real or complex). Step acceptance is a
/// fixed deterministic rule, so trajectories rerun bit-identically.
template <typename StateT>
class Dopri5 {
public:
    using Rhs = std::function<void(double, const StateT&, StateT&)>;

    Dopri5(Rhs rhs, IntegratorOptions opt) : rhs_(std::move(rhs)), opt_(opt) {}

    void start(double t0, const StateT& y0) {
        t_ = t_prev_ = t0;
        y_ = y0;
        const auto n = y0.size();
        for (auto& k : k_) k.resize(n);
        y_stage_.resize(n);
        y_err_.resize(n);
        for (auto& c : cont_) c.resize(n);
        rhs_(t_, y_, k_[0]);  // FSAL seed
        ++stats_.rhs_evals;
        h_ = opt_.h_init > 0 ? opt_.h_init : initial_step();
        if (opt_.h_max > 0) h_ = std::min(h_, opt_.h_max);
    }

    /// Advance one accepted step, not stepping past t_limit. Afterwards the
    /// dense interpolant covers [t_prev(), t()].
    void step(double t_limit = std::numeric_limits<double>::infinity()) {
        bool rejected_before = false;
        for (;;) {
            if (stats_.steps + stats_.rejected >= opt_.max_steps)
                throw IntegrationError("integrator exceeded maximum step count");
            if (t_ + h_ > t_limit) h_ = t_limit - t_;
            if (h_ <= 0.0) throw IntegrationError("integrator step size underflow");

            for (int s = 1; s < 6; ++s) {
                y_stage_ = y_;
                for (int j = 0; j < s; ++j)
                    if (kA[s][j] != 0.0) y_stage_ += (h_ * kA[s][j]) * k_[j];
                rhs_(t_ + kC[s] * h_, y_stage_, k_[s]);
                ++stats_.rhs_evals;
            }
            // 5th-order solution (b row equals the a-coefficients of stage 7)
            y_stage_ = y_;
            for (int j = 0; j < 6; ++j)
                if (kB[j] != 0.0) y_stage_ += (h_ * kB[j]) * k_[j];
            rhs_(t_ + h_, y_stage_, k_[6]);
            ++stats_.rhs_evals;

            y_err_ = (h_ * kE[0]) * k_[0];
            for (int j = 2; j < 7; ++j) y_err_ += (h_ * kE[j]) * k_[j];

            const double err = error_norm();
            if (err <= 1.0) {
                ++stats_.steps;
                prepare_dense_output();
                t_prev_ = t_;
                t_ += h_;
                y_.swap(y_stage_);
                k_[0].swap(k_[6]);  // FSAL
                double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
                fac = std::min(rejected_before ? 1.0 : 5.0, std::max(0.2, fac));
                h_ *= fac;
                if (opt_.h_max > 0) h_ = std::min(h_, opt_.h_max);
                return;
            }
            ++stats_.rejected;
            rejected_before = true;
            h_ *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }

    double t() const { return t_; }
    double t_prev() const { return t_prev_; }
    const StateT& current() const { return y_; }
    const StateT& derivative() const { return k_[0]; }  // f(t, y) at current point
    const IntegratorStats& stats() const { return stats_; }

    /// Dense output at t_query in [t_prev(), t()].
    void interpolate(double t_query, StateT& out) const {
        const double h = t_ - t_prev_;
        const double th = (t_query - t_prev_) / h;
        const double th1 = 1.0 - th;
        out = cont_[0] + th * (cont_[1] + th1 * (cont_[2] + th * (cont_[3] + th1 * cont_[4])));
    }

private:
    double error_norm() const {
        const auto sc = (opt_.atol + opt_.rtol * y_.cwiseAbs().cwiseMax(y_stage_.cwiseAbs()).array()).eval();
        return std::sqrt((y_err_.cwiseAbs().array() / sc).square().mean());
    }

    double initial_step() const {
        // standard two-trial heuristic, made deterministic by fixed fallbacks
        const double d0 = y_.cwiseAbs().maxCoeff();
        const double d1 = k_[0].cwiseAbs().maxCoeff();
        double h0 = (d0 > 1e-10 && d1 > 1e-10) ? 0.01 * d0 / d1 : 1e-4;
        if (opt_.h_max > 0) h0 = std::min(h0, opt_.h_max);
        return h0;
    }

    void prepare_dense_output() {
        cont_[0] = y_;
        cont_[1] = y_stage_ - y_;
        cont_[2] = h_ * k_[0] - cont_[1];
        cont_[3] = cont_[1] - h_ * k_[6] - cont_[2];
        cont_[4] = h_ * (kD[0] * k_[0] + kD[2] * k_[2] + kD[3] * k_[3] + kD[4] * k_[4] +
                         kD[5] * k_[5] + kD[6] * k_[6]);
    }

    static constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double kA[6][5] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    };
    static constexpr double kB[6] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                                     -2187.0 / 6784, 11.0 / 84};
    static constexpr double kE[7] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
                                     -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
    static constexpr double kD[7] = {
        -12715105075.0 / 11282082432.0, 0.0, 87487479700.0 / 32700410799.0,
        -10690763975.0 / 1880347072.0, 701980252875.0 / 199316789632.0,
        -1453857185.0 / 822651844.0, 69997945.0 / 29380423.0};

    Rhs rhs_;
    IntegratorOptions opt_;
    IntegratorStats stats_;
    double t_ = 0, t_prev_ = 0, h_ = 0;
    StateT y_, y_stage_, y_err_;
    StateT k_[7];
    StateT cont_[5];
};

}  // namespace sqpd
