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

#include <complex>
#include <stdexcept>
#include <string>

namespace ris_mcrb
{
    /// Base class of every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // ---- configuration / validation (CLI exit code 2) ----------------------

    class InvalidArgument : public Error
    {
    public:
        using Error::Error;
    };

    /// Malformed scenario text. `line` is 1-based, 0 when unknown.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &what, int line)
            : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
        int line() const noexcept { return line_; }

    private:
        int line_;
    };

    /// A scenario invariant is violated; `field` names the offending key.
    class ValidationError : public Error
    {
    public:
        ValidationError(std::string field, const std::string &what)
            : Error(field + ": " + what), field_(std::move(field)) {}
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    // ---- numerical failures (CLI exit code 3) ------------------------------

    class NumericalError : public Error
    {
    public:
        using Error::Error;
    };

    /// Wire segments overlap so the kernel distance vanishes somewhere.
    class DegenerateGeometry : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    /// sin(k0 h) too close to zero for the current-profile normalization.
    class InvalidGeometry : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class ConvergenceError : public NumericalError
    {
    public:
        ConvergenceError(const std::string &what, std::complex<double> previous, std::complex<double> last)
            : NumericalError(what), previous_(previous), last_(last) {}
        std::complex<double> previous_estimate() const noexcept { return previous_; }
        std::complex<double> last_estimate() const noexcept { return last_; }

    private:
        std::complex<double> previous_, last_;
    };

    /// (Z_SS + Z_RIS,g) is singular or numerically rank deficient.
    class SingularModel : public NumericalError
    {
    public:
        SingularModel(const std::string &what, double rcond)
            : NumericalError(what), rcond_(rcond) {}
        double rcond() const noexcept { return rcond_; }

    private:
        double rcond_;
    };

    /// The realified design matrix is not of full column rank.
    class DegenerateDesign : public NumericalError
    {
    public:
        DegenerateDesign(const std::string &what, double rcond)
            : NumericalError(what), rcond_(rcond) {}
        double rcond() const noexcept { return rcond_; }

    private:
        double rcond_;
    };

    // ---- I/O (CLI exit code 4) ---------------------------------------------

    class FileError : public Error
    {
    public:
        FileError(const std::string &path, const std::string &what)
            : Error(path + ": " + what), path_(path) {}
        const std::string &path() const noexcept { return path_; }

    private:
        std::string path_;
    };
}
