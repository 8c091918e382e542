#pragma once

namespace ftqm {

/// Physical constants used throughout the library. Natural units
/// (hbar = k_B = m = 1, so h = 2*pi) are the default; SI or any other
/// consistent system can be supplied through make().
class UnitSystem {
public:
    static UnitSystem natural();
    /// Throws InvalidInput unless all constants are finite and positive.
    static UnitSystem make(double hbar, double k_B, double mass_default);

    double hbar() const { return hbar_; }
    double k_B() const { return k_B_; }
    double h_planck() const { return h_planck_; }
    double mass_default() const { return mass_default_; }

    bool operator==(const UnitSystem&) const = default;

private:
    UnitSystem(double hbar, double k_B, double mass_default);

    double hbar_;
    double k_B_;
    double h_planck_;
    double mass_default_;
};

/// 1/(k_B T). Throws InvalidInput for T <= 0: zero temperature has its own
/// exact branch and is never reached as a limit.
double beta_of(double T, const UnitSystem& units);

} // namespace ftqm
