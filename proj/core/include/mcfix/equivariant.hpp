#pragma once

#include "mcfix/group.hpp"
#include "mcfix/sl_algebra.hpp"

namespace mcfix {

// sL∞ algebra together with a linear group action on its carrier.
struct GSLAlgebra {
    SLAlgebra algebra;
    GroupRep action;

    GSLAlgebra(SLAlgebra a, GroupRep r) : algebra(std::move(a)), action(std::move(r)) {
        if (!(action.carrier() == algebra.carrier()))
            throw SchemaError("action carrier does not match the algebra carrier");
    }
};

struct EquivarianceReport {
    bool ok = true;
    std::string witness;  // group element and tuple of the first violation
    std::string format() const { return ok ? "equivariance: ok" : "equivariance: FAIL (" + witness + ")"; }
};

// Verifies g·ℓ_n(x_1,...,x_n) = ℓ_n(g x_1,...,g x_n) on every stored tuple
// and that the action preserves each filtration stage F^p.
EquivarianceReport check_equivariance(const GSLAlgebra& gl);

// The fixed-point subalgebra L^G: carrier = invariants per degree with a
// filtration-adapted basis, brackets restricted and re-expressed in that
// basis. Throws StructuralError if the bracket of invariants leaves the
// invariant span (a broken action).
SLAlgebra fixed_subalgebra(const GSLAlgebra& gl);

}  // namespace mcfix
