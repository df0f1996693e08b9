// Copyright 2026 The segmap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEGMAP_ERRORS_HPP
#define SEGMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace segmap {

/// Base class for all typed failures raised by the library. `name()` is the
/// stable machine-readable identifier that ends up in JSON reports.
struct Error : std::runtime_error {
    explicit Error(const std::string &what) : std::runtime_error(what) {}
    virtual const char *name() const noexcept { return "Error"; }
};

#define SEGMAP_ERROR_TYPE(NAME)                                       \
    struct NAME : Error {                                             \
        using Error::Error;                                           \
        const char *name() const noexcept override { return #NAME; }  \
    }

// Construction and validation.
SEGMAP_ERROR_TYPE(InputError);
SEGMAP_ERROR_TYPE(DimensionMismatch);
SEGMAP_ERROR_TYPE(ParameterOutOfRange);
SEGMAP_ERROR_TYPE(NotHermitian);
SEGMAP_ERROR_TYPE(NotPositive);
SEGMAP_ERROR_TYPE(TraceNotOne);
SEGMAP_ERROR_TYPE(OutsideBall);
SEGMAP_ERROR_TYPE(ResampleBudgetExceeded);

// Numerical kernels.
SEGMAP_ERROR_TYPE(ConvergenceFailure);
SEGMAP_ERROR_TYPE(NumericallySingular);
SEGMAP_ERROR_TYPE(DenominatorNonpositive);

// Geometric certification.
SEGMAP_ERROR_TYPE(DegenerateSegment);
SEGMAP_ERROR_TYPE(OracleDimensionMismatch);
SEGMAP_ERROR_TYPE(BisectionFailure);
SEGMAP_ERROR_TYPE(NotNormalized);

// Reconstruction pipeline. Each one names the structural property of the
// oracle that failed to hold, so a caller can tell which stage rejected it.
SEGMAP_ERROR_TYPE(ImageSingular);
SEGMAP_ERROR_TYPE(NormalizationFailed);
SEGMAP_ERROR_TYPE(ImageNotPure);
SEGMAP_ERROR_TYPE(FrameNotOrthogonal);
SEGMAP_ERROR_TYPE(PhaseAmbiguous);
SEGMAP_ERROR_TYPE(BranchInconsistent);
SEGMAP_ERROR_TYPE(VerificationFailed);
SEGMAP_ERROR_TYPE(InsufficientSamples);
SEGMAP_ERROR_TYPE(RankDeficient);
SEGMAP_ERROR_TYPE(RestrictionNotInvariant);

#undef SEGMAP_ERROR_TYPE

}  // namespace segmap

#endif
