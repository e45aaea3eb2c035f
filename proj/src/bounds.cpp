// SPDX-License-Identifier: Apache-2.0
//
// ris-mcrb: mutual-coupling-aware RIS channel estimation bounds
// Copyright (C) 2026 ris-mcrb contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ris_mcrb/bounds.hpp"

#include <cmath>

#include <fmt/format.h>

#include "parallel.hpp"
#include "ris_mcrb/errors.hpp"

namespace ris_mcrb
{
    namespace
    {
        void check_gamma(double gamma)
        {
            if (!(gamma > 0.0) || !std::isfinite(gamma))
                throw InvalidArgument("SNR gamma must be positive");
        }

        void check_shapes(const RealifiedModel &est, const RealifiedModel &truth, const ChannelVector &x)
        {
            if (est.D.rows() != truth.D.rows() || est.D.cols() != truth.D.cols() || truth.D.cols() != x.x.size())
                throw InvalidArgument("estimation and true models have mismatched dimensions");
        }

        bool same_matrix(const RMatrix &a, const RMatrix &b)
        {
            return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
        }
    }

    LeastSquaresDesign::LeastSquaresDesign(const RMatrix &D)
        : rows_(static_cast<std::size_t>(D.rows())), cols_(static_cast<std::size_t>(D.cols())), rcond_(0.0)
    {
        if (D.cols() == 0 || D.rows() < D.cols())
            throw DegenerateDesign(fmt::format("design matrix is {}x{}; need at least as many rows as columns",
                                               D.rows(), D.cols()),
                                   0.0);
        if (!D.allFinite())
            throw DegenerateDesign("design matrix has non-finite entries", 0.0);
        qr_.compute(D);
        const auto diag = qr_.matrixR().diagonal().cwiseAbs();
        const double hi = diag.maxCoeff();
        const double lo = diag.minCoeff();
        rcond_ = hi > 0.0 ? (lo / hi) * (lo / hi) : 0.0;
        if (!(rcond_ >= design_rcond_threshold))
            throw DegenerateDesign(fmt::format("design matrix is rank deficient (rcond of D^T D ~ {:.3g})", rcond_),
                                   rcond_);
    }

    RVector LeastSquaresDesign::solve(const RVector &rhs) const
    {
        if (static_cast<std::size_t>(rhs.size()) != rows_)
            throw InvalidArgument("least-squares right-hand side has the wrong length");
        return qr_.solve(rhs);
    }

    double LeastSquaresDesign::trace_inverse_normal() const
    {
        if (!trace_)
        {
            const auto n = static_cast<Eigen::Index>(cols_);
            const RMatrix R = qr_.matrixR().topLeftCorner(n, n).triangularView<Eigen::Upper>();
            const RMatrix r_inv = R.triangularView<Eigen::Upper>().solve(RMatrix::Identity(n, n));
            trace_ = r_inv.squaredNorm();
        }
        return *trace_;
    }

    ChannelVector ml_estimate(const RealifiedModel &D_est, const RVector &r, double p_t)
    {
        if (!(p_t > 0.0))
            throw InvalidArgument("transmit power must be positive");
        const LeastSquaresDesign design(D_est.D);
        return {design.solve(r) / std::sqrt(p_t)};
    }

    ChannelVector pseudo_true(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true)
    {
        check_shapes(D_est, D_true, x_true);
        const LeastSquaresDesign design(D_est.D);
        if (same_matrix(D_est.D, D_true.D))
            return x_true;
        return {design.solve(D_true.D * x_true.x)};
    }

    double mcrb_trace(const RealifiedModel &D_est, double gamma)
    {
        check_gamma(gamma);
        return LeastSquaresDesign(D_est.D).trace_inverse_normal() / (2.0 * gamma);
    }

    double bias_trace(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true)
    {
        return (x_true.x - pseudo_true(D_est, D_true, x_true).x).squaredNorm();
    }

    double crlb(const RealifiedModel &D_true, double gamma)
    {
        return std::sqrt(mcrb_trace(D_true, gamma));
    }

    BoundReport lower_bound(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true,
                            double gamma, double p_t)
    {
        check_gamma(gamma);
        const MismatchAnalysis analysis(D_est, D_true, x_true);
        BoundReport rep;
        rep.p_t = p_t;
        rep.gamma = gamma;
        rep.tr_mcrb = analysis.mcrb_trace(gamma);
        rep.tr_bias = analysis.bias_trace();
        rep.lb = std::sqrt(rep.tr_mcrb + rep.tr_bias);
        rep.crlb = analysis.crlb(gamma);
        return rep;
    }

    MismatchAnalysis::MismatchAnalysis(RealifiedModel D_est, RealifiedModel D_true, ChannelVector x_true)
        : D_est_(std::move(D_est)), D_true_(std::move(D_true)), x_true_(std::move(x_true)), est_(D_est_.D)
    {
        check_shapes(D_est_, D_true_, x_true_);
        if (same_matrix(D_est_.D, D_true_.D))
        {
            x0_ = x_true_;
            tr_bias_ = 0.0;
        }
        else
        {
            true_.emplace(D_true_.D);
            x0_ = ChannelVector{est_.solve(D_true_.D * x_true_.x)};
            tr_bias_ = (x_true_.x - x0_.x).squaredNorm();
        }
    }

    double MismatchAnalysis::mcrb_trace(double gamma) const
    {
        check_gamma(gamma);
        return est_.trace_inverse_normal() / (2.0 * gamma);
    }

    double MismatchAnalysis::crlb(double gamma) const
    {
        check_gamma(gamma);
        const auto &design = true_ ? *true_ : est_;
        return std::sqrt(design.trace_inverse_normal() / (2.0 * gamma));
    }

    BoundReport MismatchAnalysis::report(double p_t, double sigma2) const
    {
        if (!(p_t > 0.0) || !(sigma2 > 0.0))
            throw InvalidArgument("transmit power and noise variance must be positive");
        BoundReport rep;
        rep.p_t = p_t;
        rep.gamma = p_t / sigma2;
        rep.tr_mcrb = mcrb_trace(rep.gamma);
        rep.tr_bias = tr_bias_;
        rep.lb = std::sqrt(rep.tr_mcrb + rep.tr_bias);
        rep.crlb = crlb(rep.gamma);
        return rep;
    }

    ChannelVector MismatchAnalysis::ml_estimate(const RVector &r, double p_t) const
    {
        if (!(p_t > 0.0))
            throw InvalidArgument("transmit power must be positive");
        return {est_.solve(r) / std::sqrt(p_t)};
    }

    double MismatchAnalysis::mc_rmse(double p_t, double sigma2, std::size_t trials, const SeedTree &seeds,
                                     const std::string &stream_prefix, bool noiseless) const
    {
        if (trials == 0)
            throw InvalidArgument("Monte-Carlo RMSE needs at least one trial");
        std::vector<double> sq_err(trials, 0.0);
        detail::parallel_for(trials, [&](std::size_t t)
        {
            Rng rng = seeds.stream(fmt::format("{}/{}", stream_prefix, t));
            const RVector r = generate_observations(D_true_, x_true_.x, p_t, sigma2, rng, noiseless);
            sq_err[t] = (ml_estimate(r, p_t).x - x_true_.x).squaredNorm();
        });
        double sum = 0.0;
        for (double e : sq_err)
            sum += e;
        return std::sqrt(sum / static_cast<double>(trials));
    }

    double mc_rmse(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true,
                   double p_t, double sigma2, std::size_t trials, const SeedTree &seeds,
                   const std::string &stream_prefix, bool noiseless)
    {
        return MismatchAnalysis(D_est, D_true, x_true).mc_rmse(p_t, sigma2, trials, seeds, stream_prefix, noiseless);
    }

    std::string noise_stream_prefix(double p_t_dbm)
    {
        return fmt::format("noise/{:.17g}", p_t_dbm);
    }
}
