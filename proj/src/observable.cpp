#include "xychain/observable.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "xychain/errors.hpp"

namespace xychain::observable {

ObservableSpec parse_observable(const std::string& expr, int n_sites) {
    ObservableSpec spec;
    spec.expression = expr;

    size_t i = 0;
    const auto skip_ws = [&] {
        while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
    };
    const auto fail = [&](const std::string& what) {
        throw ConfigError("observable \"" + expr + "\": " + what + " at position " +
                          std::to_string(i));
    };

    skip_ws();
    if (i >= expr.size()) fail("empty expression");

    std::set<int> seen;
    bool expect_term = true;
    while (i < expr.size()) {
        if (expect_term) {
            const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(expr[i])));
            if (c != 'X' && c != 'Y' && c != 'Z') fail("expected Pauli symbol X, Y or Z");
            ++i;
            skip_ws();
            if (i >= expr.size() || !std::isdigit(static_cast<unsigned char>(expr[i])))
                fail("expected site index");
            int site = 0;
            while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
                site = site * 10 + (expr[i] - '0');
                if (site > 1000000) fail("site index too large");
                ++i;
            }
            if (site < 1 || site > n_sites)
                fail("site " + std::to_string(site) + " outside chain of " +
                     std::to_string(n_sites) + " sites");
            if (!seen.insert(site).second) fail("duplicate site " + std::to_string(site));
            spec.factors.push_back({site, c});
            expect_term = false;
            skip_ws();
        } else {
            if (expr[i] != '*') fail("expected '*'");
            ++i;
            skip_ws();
            expect_term = true;
        }
    }
    if (expect_term) fail("trailing '*'");

    std::sort(spec.factors.begin(), spec.factors.end(),
              [](const Factor& a, const Factor& b) { return a.site < b.site; });
    return spec;
}

mpo::Mpo observable_mpo(const ObservableSpec& spec, int n_sites) {
    std::vector<pauli::LocalOperator> ops(n_sites, pauli::id());
    for (const auto& f : spec.factors) {
        switch (f.pauli) {
            case 'X': ops[f.site - 1] = pauli::sx(); break;
            case 'Y': ops[f.site - 1] = pauli::sy(); break;
            case 'Z': ops[f.site - 1] = pauli::sz(); break;
            default: throw ConfigError("observable_mpo: unknown Pauli factor");
        }
    }
    return mpo::Mpo::from_product(ops);
}

int majorana_order(const ObservableSpec& spec, int n_sites) {
    std::vector<char> majorana(2 * n_sites, 0);
    const auto toggle = [&](int idx) { majorana[idx] ^= 1; };
    for (const auto& f : spec.factors) {
        const int j = f.site;  // 1-based
        if (f.pauli == 'Z') {
            toggle(2 * j - 2);
            toggle(2 * j - 1);
        } else {
            // X_j = w_{2j-1} * string, Y_j = w_{2j} * string, string = pairs below j.
            for (int k = 1; k < j; ++k) {
                toggle(2 * k - 2);
                toggle(2 * k - 1);
            }
            toggle(f.pauli == 'X' ? 2 * j - 2 : 2 * j - 1);
        }
    }
    int order = 0;
    for (char b : majorana) order += b;
    return order;
}

long analytic_chi(const ObservableSpec& spec, int n_sites, long cap) {
    const int order = majorana_order(spec, n_sites);
    if (order >= 62) return cap;
    const long chi = 1L << order;
    return std::min(chi, cap);
}

}  // namespace xychain::observable
