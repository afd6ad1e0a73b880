#pragma once

#include <stdexcept>
#include <string>

namespace leibniz {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands have incompatible dimensions.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// The computed spectrum cannot be partitioned into well-separated clusters
/// at the requested tolerance. Adjust eps_cluster and retry.
struct ClusterAmbiguity : Error {
    using Error::Error;
};

/// A matrix required to be nilpotent failed the nilpotency check.
struct NotNilpotent : Error {
    using Error::Error;
};

/// A matrix required to be unipotent (identity plus nilpotent) is not.
struct NotUnipotent : Error {
    using Error::Error;
};

/// P + I was expected to be an automorphism of the algebra.
struct NotUnipotentShift : Error {
    using Error::Error;
};

/// The supplied map is not a derivation of the algebra.
struct NotADerivation : Error {
    using Error::Error;
};

/// The supplied map is not an automorphism of the algebra.
struct NotAnAutomorphism : Error {
    using Error::Error;
};

/// The supplied subspace is not an ideal of the required sidedness.
struct NotAnIdeal : Error {
    using Error::Error;
};

/// The structure tensor violates the Leibniz identity.
struct NotALeibnizAlgebra : Error {
    using Error::Error;
};

/// A^p differs from the identity for the claimed order p.
struct OrderMismatch : Error {
    using Error::Error;
};

/// A hypothesis held but the certified conclusion failed. This indicates a
/// bug in the library (or corrupted input), never new mathematics.
struct TheoremViolation : Error {
    using Error::Error;
};

/// Unknown catalog identifier.
struct UnknownId : Error {
    using Error::Error;
};

/// Polynomial degree too high for the requested identity.
struct DegreeTooHigh : Error {
    using Error::Error;
};

/// Arguments violate a stated precondition.
struct PreconditionViolation : Error {
    using Error::Error;
};

/// Constructor parameters do not match the requested family member.
struct ParameterMismatch : Error {
    using Error::Error;
};

/// Malformed input file.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace leibniz
