#ifndef K3DYN_EXACTLA_HPP
#define K3DYN_EXACTLA_HPP

// Exact integer/rational linear algebra: matrices, lattices, signatures,
// kernels, complements, short vectors and characteristic polynomials.

#include "k3dyn/charpoly.hpp"
#include "k3dyn/lattice.hpp"
#include "k3dyn/linalg.hpp"
#include "k3dyn/matrix.hpp"
#include "k3dyn/poly.hpp"

#endif  // K3DYN_EXACTLA_HPP
