#pragma once

#include <stdexcept>
#include <string>

namespace vtg {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejected input: non-finite values, out-of-range parameters, malformed data.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Two grids that must share a frame (dims, voxel size, origin) do not.
class FrameMismatchError : public Error {
public:
    using Error::Error;
};

// Tensor or grid shapes are inconsistent with the configured network.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

// Geometrically degenerate input, e.g. a coplanar cloud fed to the hull.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// A camera placement that cannot produce a meaningful render.
class DegenerateViewError : public Error {
public:
    using Error::Error;
};

// A linear solve or factorization failed beyond recovery.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Training aborted: empty dataset, non-finite gradients, bad mode.
class TrainingError : public Error {
public:
    using Error::Error;
};

// File could not be read, written, or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace vtg
