#pragma once

#include <stdexcept>
#include <string>

namespace noneq {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotSquare : public Error {
public:
    NotSquare(long rows, long cols)
        : Error("rate matrix is not square: " + std::to_string(rows) + "x" +
                std::to_string(cols)),
          rows(rows), cols(cols) {}
    long rows, cols;
};

// Strict validation demands q_ij > 0 off the diagonal.
class NonPositiveRate : public Error {
public:
    NonPositiveRate(int i, int j)
        : Error("rate q(" + std::to_string(i) + "," + std::to_string(j) +
                ") must be positive"),
          i(i), j(j) {}
    int i, j;
};

class NegativeRate : public Error {
public:
    NegativeRate(int i, int j)
        : Error("rate q(" + std::to_string(i) + "," + std::to_string(j) +
                ") must be nonnegative"),
          i(i), j(j) {}
    int i, j;
};

class SingularSystem : public Error {
public:
    explicit SingularSystem(const std::string& what) : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class TooSmall : public Error {
public:
    TooSmall(const std::string& op, int n, int minimum)
        : Error(op + " requires at least " + std::to_string(minimum) +
                " states, got " + std::to_string(n)),
          n(n), minimum(minimum) {}
    int n, minimum;
};

class BadEdge : public Error {
public:
    BadEdge(int i, int j, int n)
        : Error("(" + std::to_string(i) + "," + std::to_string(j) +
                ") is not an edge for n=" + std::to_string(n)),
          i(i), j(j), n(n) {}
    int i, j, n;
};

class BadIndex : public Error {
public:
    BadIndex(int r, int n)
        : Error("edge index " + std::to_string(r) + " out of range for n=" +
                std::to_string(n)),
          r(r), n(n) {}
    int r, n;
};

class BadStep : public Error {
public:
    BadStep(int k, int n)
        : Error("step k=" + std::to_string(k) + " out of range for n=" +
                std::to_string(n)),
          k(k), n(n) {}
    int k, n;
};

class BadPower : public Error {
public:
    BadPower(int k, int n)
        : Error("shift power k=" + std::to_string(k) + " out of range for n=" +
                std::to_string(n)),
          k(k), n(n) {}
    int k, n;
};

class NotHamiltonian : public Error {
public:
    NotHamiltonian(int n, int k)
        : Error("gcd(k,n) != 1: the " + std::to_string(k) +
                "-closed-path on n=" + std::to_string(n) + " repeats vertices"),
          n(n), k(k) {}
    int n, k;
};

// Matrix fails the antisymmetry / zero-row-sum membership test.
class NotInSpace : public Error {
public:
    explicit NotInSpace(const std::string& what) : Error(what) {}
};

class ReconstructionResidual : public Error {
public:
    explicit ReconstructionResidual(const std::string& what) : Error(what) {}
};

// The ring cycle is reversible, so the ring current would be zero.
class ReversibleRing : public Error {
public:
    ReversibleRing() : Error("ring cycle is reversible (det of the ring system vanishes)") {}
};

class ZeroDenominator : public Error {
public:
    ZeroDenominator() : Error("denominator of the closed-form ring current vanishes") {}
};

class NonPositive : public Error {
public:
    explicit NonPositive(int n)
        : Error("closed-form pi_" + std::to_string(n) + " is not positive"), n(n) {}
    int n;
};

class Infeasible : public Error {
public:
    Infeasible(int i, int j, const std::string& what)
        : Error("infeasible synthesis at edge (" + std::to_string(i) + "," +
                std::to_string(j) + "): " + what),
          i(i), j(j) {}
    explicit Infeasible(const std::string& what) : Error(what), i(0), j(0) {}
    int i, j;
};

class BadHorizon : public Error {
public:
    explicit BadHorizon(double horizon)
        : Error("simulation horizon must be positive, got " + std::to_string(horizon)) {}
};

class EmptyTrajectory : public Error {
public:
    EmptyTrajectory() : Error("trajectory holds no states") {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace noneq
