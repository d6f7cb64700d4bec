#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace moldgate {

// One material record. Unit regime is fixed: temperatures in degC, thermal
// conductivity in W/(m*degC), viscosity in Pa*s, shear rate in 1/s. Velocity
// comes out of the SI evaluation in m/s and is converted to mm/s; all gate
// dimensions are mm. This is the only combination that reproduces the shipped
// material table, so it is not configurable.
struct MaterialParams {
    std::string name;
    double n = 0.0;         // power-law index, in (0, 1]
    double t_melt = 0.0;    // degC
    double t_wall = 0.0;    // degC
    double gamma_opt = 0.0; // optimal shear rate, 1/s
    double mu_opt = 0.0;    // optimal viscosity, Pa*s
    double kappa = 0.0;     // thermal conductivity, W/(m*degC)
};

struct MaterialError : std::runtime_error {
    explicit MaterialError(const std::string& what) : std::runtime_error(what) {}
};

inline void validate_material(const MaterialParams& m) {
    auto fail = [&](const std::string& msg) { throw MaterialError("material '" + m.name + "': " + msg); };
    if (!(m.n > 0.0 && m.n <= 1.0)) fail("power-law index n must be in (0, 1]");
    if (!(m.t_melt > m.t_wall)) fail("T_melt must exceed T_wall");
    if (!(m.gamma_opt > 0.0)) fail("gamma_opt must be positive");
    if (!(m.mu_opt > 0.0)) fail("mu_opt must be positive");
    if (!(m.kappa > 0.0)) fail("kappa must be positive");
}

struct RectGate {
    double width = 0.0;  // mm
    double height = 0.0; // mm
};

struct GateSizing {
    double front_velocity = 0.0; // mean melt-front velocity, mm/s
    double gate_radius = 0.0;    // circular gate radius, mm
};

// Mean velocity of the melt front: sqrt(5*(T_melt - T_wall)*kappa/(3*mu_opt)),
// evaluated in SI (m/s) and returned in mm/s.
inline double mean_front_velocity(const MaterialParams& m) {
    const double radicand = 5.0 * (m.t_melt - m.t_wall) * m.kappa / (3.0 * m.mu_opt);
    if (!(radicand > 0.0)) throw MaterialError("material '" + m.name + "': non-positive velocity radicand");
    return std::sqrt(radicand) * 1000.0;
}

// Circular gate radius: (3 + 1/n) * v_bar / gamma_opt, mm.
inline double gate_radius(const MaterialParams& m) {
    return (3.0 + 1.0 / m.n) * mean_front_velocity(m) / m.gamma_opt;
}

inline GateSizing size_gate(const MaterialParams& m) {
    const double v = mean_front_velocity(m);
    return {v, (3.0 + 1.0 / m.n) * v / m.gamma_opt};
}

// Rectangular gate whose hydraulic radius w*h / (2*(w+h)) equals the circular
// gate radius, with aspect k = w/h >= 1. Solving with w = k*h gives
// h = 2*R*(k+1)/k and w = k*h.
inline RectGate rectangular_gate(double gate_radius_mm, double aspect) {
    if (!(gate_radius_mm > 0.0)) throw std::invalid_argument("rectangular_gate: radius must be positive");
    if (!(aspect >= 1.0)) throw std::invalid_argument("rectangular_gate: aspect w/h must be >= 1");
    const double h = 2.0 * gate_radius_mm * (aspect + 1.0) / aspect;
    return {aspect * h, h};
}

// Pressure drop 12*mu*L*v_bar/H^2 evaluated in SI, returned in MPa.
// mu in Pa*s, L and H in mm, v_bar in mm/s.
inline double pressure_drop(double mu, double flow_length_mm, double front_velocity_mm_s, double thickness_mm) {
    if (!(mu > 0.0)) throw std::invalid_argument("pressure_drop: viscosity must be positive");
    if (!(flow_length_mm >= 0.0)) throw std::invalid_argument("pressure_drop: flow length must be >= 0");
    if (!(front_velocity_mm_s > 0.0)) throw std::invalid_argument("pressure_drop: velocity must be positive");
    if (!(thickness_mm > 0.0)) throw std::invalid_argument("pressure_drop: thickness must be positive");
    const double length_m = flow_length_mm * 1e-3;
    const double velocity_m_s = front_velocity_mm_s * 1e-3;
    const double thickness_m = thickness_mm * 1e-3;
    const double pa = 12.0 * mu * length_m * velocity_m_s / (thickness_m * thickness_m);
    return pa * 1e-6;
}

} // namespace moldgate
