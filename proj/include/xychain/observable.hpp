#pragma once

#include <string>
#include <vector>

#include "xychain/mpo.hpp"

namespace xychain::observable {

struct Factor {
    int site = 0;    // 1-based
    char pauli = 0;  // 'X', 'Y' or 'Z'
};

// Pauli-product observable. Grammar: term := pauli site_index with pauli in
// {X,Y,Z} (case-insensitive); product := term ('*' term)*; whitespace is
// ignored. "Z25" is sz on site 25, "Z1*Z50" the two-point product. At most
// one factor per site.
struct ObservableSpec {
    std::string expression;
    std::vector<Factor> factors;
};

// Throws ConfigError with the offending position on bad input.
ObservableSpec parse_observable(const std::string& expr, int n_sites);

// chi = 1 product MPO of the observable.
mpo::Mpo observable_mpo(const ObservableSpec& spec, int n_sites);

// Order of the Jordan-Wigner image in Majorana operators: Z_j contributes
// the pair {w_{2j-1}, w_2j}, X_j / Y_j one boundary Majorana plus the string
// pair set below j; factors combine by symmetric difference. The exact MPO
// dimension of the evolved operator is 2^order.
int majorana_order(const ObservableSpec& spec, int n_sites);

// 2^order clamped to `cap` to avoid overflow for string-like observables.
long analytic_chi(const ObservableSpec& spec, int n_sites, long cap = 1L << 30);

inline bool parity_even(const ObservableSpec& spec, int n_sites) {
    return majorana_order(spec, n_sites) % 2 == 0;
}

}  // namespace xychain::observable
