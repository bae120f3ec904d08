#pragma once

#include <stdexcept>
#include <string>

namespace rgg {

struct NotPsdError : std::runtime_error {
    explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularError : std::runtime_error {
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct WrongRegimeError : std::runtime_error {
    explicit WrongRegimeError(const std::string& what) : std::runtime_error(what) {}
};

struct NaturalPowersOnlyError : std::runtime_error {
    explicit NaturalPowersOnlyError(const std::string& what) : std::runtime_error(what) {}
};

struct TorusDeltaTooLargeError : std::runtime_error {
    explicit TorusDeltaTooLargeError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroLengthEdgeError : std::runtime_error {
    explicit ZeroLengthEdgeError(const std::string& what) : std::runtime_error(what) {}
};

struct TauVectorShapeError : std::runtime_error {
    explicit TauVectorShapeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rgg
