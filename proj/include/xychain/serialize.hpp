#pragma once

#include <iosfwd>
#include <string>

#include "xychain/mpo.hpp"

namespace xychain::mpo {

// Checkpoint format: the magic line "XYMPO1\n", a length-prefixed JSON
// header {n_sites, d, bond_dims, log_prefactor, zero, canonical}, then the
// raw payload as little-endian 64-bit floats: per-site tensors as (re, im)
// pairs in (left, m, right) index order with the left index fastest,
// followed by the interior Schmidt vectors.
void save_mpo(const Mpo& m, std::ostream& out);
void save_mpo(const Mpo& m, const std::string& path);

Mpo load_mpo(std::istream& in);
Mpo load_mpo(const std::string& path);

}  // namespace xychain::mpo
