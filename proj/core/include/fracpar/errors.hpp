#pragma once

#include <stdexcept>
#include <string>

namespace fracpar {

/// A shifted system (zM - A) was numerically singular; z sits too close to a
/// pencil eigenvalue.
class NearSingularError : public std::runtime_error {
public:
    explicit NearSingularError(const std::string& what) : std::runtime_error(what) {}
};

/// A dense/desk-scale guard was exceeded.
class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// The sup-search probe sequence did not become monotonically decreasing.
class InconclusiveSearchError : public std::runtime_error {
public:
    explicit InconclusiveSearchError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear solve or factorization failed unexpectedly.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fracpar
