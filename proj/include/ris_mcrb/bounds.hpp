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

#pragma once

#include <optional>
#include <string>

#include <Eigen/QR>

#include "ris_mcrb/channel.hpp"
#include "ris_mcrb/rng.hpp"
#include "ris_mcrb/types.hpp"

namespace ris_mcrb
{
    /// Designs with rcond(D^T D) below this are rejected as rank deficient.
    inline constexpr double design_rcond_threshold = 1e-13;

    /*!
     * Column-pivoted QR of a realified design matrix D, shared by the ML
     * estimator and the bound computations. rcond() estimates the reciprocal
     * condition number of D^T D as (|R_min| / |R_max|)^2 from the pivoted R.
     */
    class LeastSquaresDesign
    {
    public:
        /// Throws DegenerateDesign when D has fewer rows than columns or rcond() < threshold.
        explicit LeastSquaresDesign(const RMatrix &D);

        /// argmin_x ||D x - rhs||.
        RVector solve(const RVector &rhs) const;

        /// Tr((D^T D)^-1) = ||R^-1||_F^2.
        double trace_inverse_normal() const;

        double rcond() const { return rcond_; }
        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }

    private:
        Eigen::ColPivHouseholderQR<RMatrix> qr_;
        std::size_t rows_;
        std::size_t cols_;
        double rcond_;
        mutable std::optional<double> trace_;
    };

    /// Bounds at one operating point. Traces in ohm^2, lb/crlb/rmse in ohm.
    struct BoundReport
    {
        double p_t = 0.0;  // W
        double gamma = 0.0;
        double tr_mcrb = 0.0;
        double tr_bias = 0.0;
        double lb = 0.0;
        double crlb = 0.0;
        std::optional<double> rmse;
    };

    /// x_hat = (1/sqrt(P_T)) argmin ||D_est x - r||.
    ChannelVector ml_estimate(const RealifiedModel &D_est, const RVector &r, double p_t);

    /// x0 = (D_est^T D_est)^-1 D_est^T D_true x_true, the KLD minimizer.
    ChannelVector pseudo_true(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true);

    /// Tr((D_est^T D_est)^-1) / (2 gamma). Throws InvalidArgument for gamma <= 0.
    double mcrb_trace(const RealifiedModel &D_est, double gamma);

    /// ||x_true - Phi x_true||^2 with Phi = (D_est^T D_est)^-1 D_est^T D_true.
    double bias_trace(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true);

    /// sqrt(Tr((D_true^T D_true)^-1) / (2 gamma)).
    double crlb(const RealifiedModel &D_true, double gamma);

    /// lb = sqrt(tr_mcrb + tr_bias); the report also carries crlb(D_true, gamma).
    /// p_t is recorded as given; gamma is what enters the bounds.
    BoundReport lower_bound(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true,
                            double gamma, double p_t = 0.0);

    /*!
     * Estimation problem with the factorizations of both models cached.
     *
     * Used by the sweeps, which evaluate many power points against the same
     * pair of models. When `matched` the estimator uses D_true.
     */
    class MismatchAnalysis
    {
    public:
        MismatchAnalysis(RealifiedModel D_est, RealifiedModel D_true, ChannelVector x_true);

        const RealifiedModel &estimation_model() const { return D_est_; }
        const RealifiedModel &true_model() const { return D_true_; }
        const ChannelVector &true_channel() const { return x_true_; }

        const ChannelVector &pseudo_true() const { return x0_; }
        double bias_trace() const { return tr_bias_; }
        double mcrb_trace(double gamma) const;
        double crlb(double gamma) const;
        BoundReport report(double p_t, double sigma2) const;

        ChannelVector ml_estimate(const RVector &r, double p_t) const;

        /*!
         * sqrt(mean_t ||x_hat_t - x_true||^2) over `trials` independent noise
         * draws. Trial t uses substream "<stream_prefix>/<t>" of `seeds`; the
         * squared errors are summed in trial order so the result does not
         * depend on the thread count.
         */
        double mc_rmse(double p_t, double sigma2, std::size_t trials, const SeedTree &seeds,
                       const std::string &stream_prefix, bool noiseless = false) const;

    private:
        RealifiedModel D_est_;
        RealifiedModel D_true_;
        ChannelVector x_true_;
        LeastSquaresDesign est_;
        std::optional<LeastSquaresDesign> true_;  // empty when both models are the same matrix
        ChannelVector x0_;
        double tr_bias_;
    };

    /// Free-function form of MismatchAnalysis::mc_rmse.
    double mc_rmse(const RealifiedModel &D_est, const RealifiedModel &D_true, const ChannelVector &x_true,
                   double p_t, double sigma2, std::size_t trials, const SeedTree &seeds,
                   const std::string &stream_prefix, bool noiseless = false);

    /// "noise/<p_t_dbm>", the prefix of the per-trial noise substreams at one power.
    std::string noise_stream_prefix(double p_t_dbm);
}
