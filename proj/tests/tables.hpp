#pragma once

// Finite-group Cayley tables built from first principles, used both as
// direct test inputs and as oracles for the bundled data files.
// Convention everywhere: table[g][h] = g*h, and for permutation groups
// (g*h)(x) = h(g(x)), i.e. apply g first.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

inline std::vector<std::vector<int>> cyclic_table(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) t[g][h] = (g + h) % n;
    return t;
}

inline std::vector<std::vector<int>> klein4_table() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int g = 0; g < 4; ++g)
        for (int h = 0; h < 4; ++h) t[g][h] = g ^ h;
    return t;
}

// permutations of {0..n-1} in lexicographic one-line order
inline std::vector<std::vector<int>> symmetric_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

inline std::vector<std::vector<int>> symmetric_table(int n) {
    auto perms = symmetric_permutations(n);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> t(perms.size(), std::vector<int>(perms.size()));
    for (std::size_t g = 0; g < perms.size(); ++g)
        for (std::size_t h = 0; h < perms.size(); ++h) {
            std::vector<int> c(static_cast<std::size_t>(n));
            for (int x = 0; x < n; ++x)
                c[static_cast<std::size_t>(x)] =
                    perms[h][static_cast<std::size_t>(perms[g][static_cast<std::size_t>(x)])];
            t[g][h] = index[c];
        }
    return t;
}

// elements 1,-1,i,-i,j,-j,k,-k as (sign, axis); index 2*axis+sign for
// axis in {0:1, 1:i, 2:j, 3:k}
inline std::vector<std::vector<int>> quaternion8_table() {
    auto mult = [](int a, int b) {
        int sa = a & 1, xa = a >> 1, sb = b & 1, xb = b >> 1;
        int sign = sa ^ sb, axis;
        if (xa == 0) {
            axis = xb;
        } else if (xb == 0) {
            axis = xa;
        } else if (xa == xb) {
            axis = 0;
            sign ^= 1; // i*i = -1
        } else {
            axis = 6 - xa - xb; // the remaining axis
            // cyclic order i->j->k is positive
            bool forward = (xb - xa + 3) % 3 == 1;
            if (!forward) sign ^= 1;
        }
        return 2 * axis + sign;
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int g = 0; g < 8; ++g)
        for (int h = 0; h < 8; ++h) t[g][h] = mult(g, h);
    return t;
}
