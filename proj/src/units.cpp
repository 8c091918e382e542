#include "ftqm/units.hpp"

#include "ftqm/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ftqm {

UnitSystem::UnitSystem(double hbar, double k_B, double mass_default)
    : hbar_(hbar), k_B_(k_B), h_planck_(2.0 * std::numbers::pi * hbar), mass_default_(mass_default)
{
}

UnitSystem UnitSystem::natural()
{
    return UnitSystem(1.0, 1.0, 1.0);
}

UnitSystem UnitSystem::make(double hbar, double k_B, double mass_default)
{
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw InvalidInput(std::string("unit constant ") + name + " must be finite and positive");
        }
    };
    check(hbar, "hbar");
    check(k_B, "k_B");
    check(mass_default, "mass");
    return UnitSystem(hbar, k_B, mass_default);
}

double beta_of(double T, const UnitSystem& units)
{
    if (!(T > 0.0)) {
        throw InvalidInput("beta is undefined for T <= 0; use the zero-temperature branch");
    }
    return 1.0 / (units.k_B() * T);
}

} // namespace ftqm
