#pragma once

#include "ehae/ring.hpp"

namespace ehae {

// Edge factors of the diagram expansion, as J-basis elements with weights.
struct Propagators {
    RingElement S_zz;       // weights (2, -2)
    RingElement S_z;        // weights (1, -2)
    RingElement S;          // weights (0, -2)
    RingElement Delta_z;    // weights (1, 1)
    RingElement Delta;      // weights (0, 1)
};

Propagators propagators_and_terminators();
// Same elements expressed in the given basis.
Propagators propagators_in(Basis b);

// Delta_zz = z^{-5/2} (Q2 - V1 Q1 - V2 Q0 - R1), weights (-2, -1).
RingElement disk_two_point(Basis b);

}  // namespace ehae
