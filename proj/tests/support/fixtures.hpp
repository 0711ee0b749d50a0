#pragma once

#include <memory>

#include "qemit/config.hpp"
#include "qemit/phonon_bath.hpp"

namespace qemit::test {

// Reference bulk GaAs profile used across the suites.
inline PhononBathParams gaas_bath(double temperature) {
    return PhononBathParams{0.025, 1.49, temperature};
}

inline std::shared_ptr<const PhononContext> gaas_ctx(double temperature, double mu = 0.019) {
    return std::make_shared<PhononContext>(gaas_bath(temperature), DephasingParams{mu});
}

inline EmitterChain gaas_chain(int n, double lambda_fraction) {
    EmitterChain c;
    c.n_emitters = n;
    c.wavelength = 940.0;
    c.spacing = c.wavelength / lambda_fraction;
    c.refractive_index = 3.5;
    c.gamma = 8.5e-4;
    return c;
}

}  // namespace qemit::test
