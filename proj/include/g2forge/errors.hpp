#pragma once

#include <stdexcept>
#include <string>

namespace g2forge {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// scalar_expr
struct IncompatibleBase : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// form
struct SingularMetric : Error { using Error::Error; };

// lie
struct NotDerivation : Error { using Error::Error; };
struct NonDiagonalizable : Error { using Error::Error; };

// su3
struct UnstableForm : Error { using Error::Error; };
struct NonSymmetric : Error { using Error::Error; };

// g2
struct NonPositiveType : Error { using Error::Error; };
struct InconsistentTau1 : Error { using Error::Error; };
struct Tau2NonZero : Error { using Error::Error; };

// curvature
struct NotOrthonormal : Error { using Error::Error; };
struct UnresolvableStructureFunctions : Error { using Error::Error; };

// flow
struct NewtonDiverged : Error { using Error::Error; };

// catalog / io
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct JacobiFailed : Error { using Error::Error; };

} // namespace g2forge
