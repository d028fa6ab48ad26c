#ifndef ALEFV_CORE_HPP
#define ALEFV_CORE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace alefv {

/// 2D point / vector with the handful of operations the solver needs.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::sqrt(a.x * a.x + a.y * a.y); }

/// Fixed-size state vector for a system of NV conserved variables.
template <int NV>
struct StateVec {
    std::array<double, NV> q{};

    double& operator[](int i) { return q[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return q[static_cast<std::size_t>(i)]; }

    StateVec& operator+=(const StateVec& o) {
        for (int i = 0; i < NV; ++i) q[i] += o.q[i];
        return *this;
    }
    StateVec& operator-=(const StateVec& o) {
        for (int i = 0; i < NV; ++i) q[i] -= o.q[i];
        return *this;
    }
    StateVec& operator*=(double s) {
        for (int i = 0; i < NV; ++i) q[i] *= s;
        return *this;
    }
};

template <int NV> StateVec<NV> operator+(StateVec<NV> a, const StateVec<NV>& b) { return a += b; }
template <int NV> StateVec<NV> operator-(StateVec<NV> a, const StateVec<NV>& b) { return a -= b; }
template <int NV> StateVec<NV> operator*(double s, StateVec<NV> a) { return a *= s; }
template <int NV> StateVec<NV> operator*(StateVec<NV> a, double s) { return a *= s; }

template <int NV>
double max_abs(const StateVec<NV>& a) {
    double m = 0.0;
    for (int i = 0; i < NV; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

// ---------------------------------------------------------------------------
// Error hierarchy.  Every failure carries a human-readable message with the
// offending entity (element id, node id, step number) already formatted in.
// ---------------------------------------------------------------------------

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GeometryError : SolverError {
    using SolverError::SolverError;
};

struct MeshError : SolverError {
    using SolverError::SolverError;
};

/// Inadmissible thermodynamic state (negative density or pressure).
struct StateError : SolverError {
    using SolverError::SolverError;
};

struct PredictorError : SolverError {
    using SolverError::SolverError;
};

struct FluxError : SolverError {
    using SolverError::SolverError;
};

struct ConfigError : SolverError {
    using SolverError::SolverError;
};

} // namespace alefv

#endif
