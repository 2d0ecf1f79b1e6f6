#pragma once

// Small named graphs used across tests.

#include "gpc/graph.hpp"

namespace gpc::testing {

// n1:{A,k="5"}, n2:{B,k="5"}, e1: n1->n2 labeled a, u1 undirected self-loop at n2.
PropertyGraph g_tiny();
// nA:A, nB:B, nC:C; e1: nA->nC, e2: nA->nB labeled a, e3: nC->nB.
PropertyGraph g_intro();
// u, v with a- and b-labeled edges in both directions.
PropertyGraph g_exp();
// Directed triangle with both orientations of each side.
PropertyGraph k3();
// n1 -e1-> n2 -e2-> n3.
PropertyGraph chain3();

}  // namespace gpc::testing
