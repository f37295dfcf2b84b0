#include "mubgeo/monomial.hpp"

namespace mubgeo {

MonomialOperator compose(const MonomialOperator& op1, const MonomialOperator& op2) {
    if (op1.modulus() != op2.modulus()) throw Error(Errc::modulus_mismatch, "compose over different d");
    // Move I^s1 right past X^a2 Z^c2 (conjugation by I negates both powers),
    // then Z^c1 past X^a2' which costs omega^(c1 a2').
    const Residue a2 = op1.inverted ? -op2.x_power : op2.x_power;
    const Residue c2 = op1.inverted ? -op2.z_power : op2.z_power;
    return {
        op1.x_power + a2,
        op1.z_power + c2,
        op1.inverted != op2.inverted,
        op1.phase + op2.phase + op1.z_power * a2,
    };
}

MonomialOperator adjoint(const MonomialOperator& op) {
    // (w^t X^a Z^c I^s)^+ = I^s Z^-c X^-a w^-t = w^(ca - t) X^(-sa) Z^(-sc) I^s, s = +-1
    const Residue a = op.inverted ? op.x_power : -op.x_power;
    const Residue c = op.inverted ? op.z_power : -op.z_power;
    return {a, c, op.inverted, op.z_power * op.x_power - op.phase};
}

MonomialOperator power(const MonomialOperator& op, std::uint32_t k) {
    MonomialOperator r = MonomialOperator::identity(op.modulus());
    for (std::uint32_t i = 0; i < k; ++i) r = compose(r, op);
    return r;
}

std::string MonomialOperator::to_string() const {
    std::string s = "w^" + phase.to_string() + " X^" + x_power.to_string() + " Z^" + z_power.to_string();
    if (inverted) s += " I";
    return s;
}

}  // namespace mubgeo
