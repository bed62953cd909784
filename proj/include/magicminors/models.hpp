/*
 * Copyright 2026 The magic-minors authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MAGICMINORS_MODELS_HPP
#define MAGICMINORS_MODELS_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "magicminors/errors.hpp"
#include "magicminors/matrix.hpp"

namespace magicminors {

enum class Family { TFI, XX, SymbolZn, SymbolChiral };
enum class Boundary { PBC, OBC };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::TFI: return "tfi";
        case Family::XX: return "xx";
        case Family::SymbolZn: return "zn+1";
        case Family::SymbolChiral: return "chiral";
    }
    return "?";
}

inline std::string boundary_name(Boundary b) { return b == Boundary::PBC ? "pbc" : "obc"; }

struct ModelSpec {
    Family family = Family::TFI;
    Boundary boundary = Boundary::PBC;
    int L = 0;
    int n = 0; // f(z) = z^n + 1
    int m = 0; // f(z) = z^m + z^-m

    void validate() const {
        if (L < 1) throw ConfigError("ModelSpec: L must be >= 1");
        switch (family) {
            case Family::TFI:
                break;
            case Family::XX:
                if (L % 2 != 0) throw ConfigError("ModelSpec: XX requires even L");
                break;
            case Family::SymbolZn:
                if (boundary != Boundary::PBC)
                    throw ConfigError("ModelSpec: symbol families support PBC only");
                if (n < 1) throw ConfigError("ModelSpec: z^n+1 requires n >= 1");
                if (L % (2 * n) != 0)
                    throw ConfigError("ModelSpec: z^n+1 requires 2n | L");
                break;
            case Family::SymbolChiral:
                if (boundary != Boundary::PBC)
                    throw ConfigError("ModelSpec: symbol families support PBC only");
                if (m < 1) throw ConfigError("ModelSpec: z^m+z^-m requires m >= 1");
                if (L % (2 * m) != 0)
                    throw ConfigError("ModelSpec: z^m+z^-m requires 2m | L");
                if ((L / (2 * m)) % 2 != 0)
                    throw ConfigError("ModelSpec: z^m+z^-m requires L/(2m) even");
                break;
        }
    }

    std::string label() const {
        std::string s = family_name(family) + "," + boundary_name(boundary) +
                        ",L=" + std::to_string(L);
        if (family == Family::SymbolZn) s += ",n=" + std::to_string(n);
        if (family == Family::SymbolChiral) s += ",m=" + std::to_string(m);
        return s;
    }
};

inline double csc(double x) { return 1.0 / std::sin(x); }

// Correlation matrix of the critical transverse-field Ising chain.
//   PBC: G_jk = (-1)^(j-k)/L * csc(pi/L (j-k+1/2))
//   OBC: G_jk = (-1)^(j-k)/(2L+1) * [csc(pi/(2L+1)(j-k+1/2)) + csc(pi/(2L+1)(j+k-1/2))]
inline Matrix tfi_g(Boundary bc, int L) {
    if (L < 1) throw ConfigError("tfi_g: L must be >= 1");
    const double pi = std::numbers::pi;
    Matrix g(L, L, true);
    for (int j = 1; j <= L; ++j) {
        for (int k = 1; k <= L; ++k) {
            const double sgn = ((j - k) % 2 == 0) ? 1.0 : -1.0;
            double v;
            if (bc == Boundary::PBC) {
                v = sgn / L * csc(pi / L * (j - k + 0.5));
            } else {
                const double q = pi / (2 * L + 1);
                v = sgn / (2 * L + 1) * (csc(q * (j - k + 0.5)) + csc(q * (j + k - 0.5)));
            }
            g.set(j - 1, k - 1, v);
        }
    }
    return g;
}

// R matrix of the XX chain over the checkerboard base configuration.
// Entries vanish whenever j+k is even.
//   PBC, j<k, j+k odd: R_jk = (-1)^((j+k+1)/2) * (2/L) * csc(pi (j-k)/L)
//   OBC, j odd, k even: R_jk = (1/(L+1)) * [csc((k-j)/2 th) + csc((k+j)/2 th)],
//        th = pi/(L+1); j even, k odd by antisymmetry.
inline SkewMatrix xx_r(Boundary bc, int L) {
    if (L < 1) throw ConfigError("xx_r: L must be >= 1");
    if (L % 2 != 0) throw ConfigError("xx_r: XX requires even L");
    const double pi = std::numbers::pi;
    SkewMatrix r(L, true);
    if (bc == Boundary::PBC) {
        for (int j = 1; j <= L; ++j) {
            for (int k = j + 1; k <= L; ++k) {
                if ((j + k) % 2 == 0) continue;
                const double sgn = (((j + k + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
                const double v = sgn * (2.0 / L) * csc(pi * (j - k) / L);
                r.set_pair(j - 1, k - 1, v);
            }
        }
    } else {
        const double th = pi / (L + 1);
        auto f = [&](int j, int k) {
            return 1.0 / (L + 1) * (csc((k - j) / 2.0 * th) + csc((k + j) / 2.0 * th));
        };
        for (int j = 1; j <= L; ++j) {
            for (int k = j + 1; k <= L; ++k) {
                if ((j + k) % 2 == 0) continue;
                // Three-case Table rule: direct formula for j odd & k even,
                // antisymmetric image for j even & k odd.
                const double v = (j % 2 == 1) ? f(j, k) : -f(k, j);
                r.set_pair(j - 1, k - 1, v);
            }
        }
    }
    return r;
}

// Half-shifted correlation matrix of a dispersion symbol s(theta) on the grid
// theta_k = (2 pi / L)(k - 1/2):
//   G_ab = (1/L) sum_k s(theta_k) exp(i theta_k (a-b)).
// For f(z) = z^n + 1 the symbol is e^{i n theta/2} sgn(cos(n theta/2)); for
// f(z) = z^m + z^-m it is sgn(cos(m theta)). The divisibility invariants keep
// every grid point away from the symbol zeros, so the result is real.
//
// Note on the prefactor: the alternating (-1)^(a-b) prefactor variant equals
// this matrix conjugated by diag(1,-1,1,...). The prefactor-free normalization
// is adopted because it reproduces the TFI Table entries exactly at f = z+1;
// every gauge-invariant quantity (Det_beta, block spectra, generating
// functions) is identical between the two conventions.
inline Matrix symbol_g(const ModelSpec& spec) {
    spec.validate();
    if (spec.family != Family::SymbolZn && spec.family != Family::SymbolChiral)
        throw ConfigError("symbol_g: spec must be a symbol family");
    const int L = spec.L;
    const double pi = std::numbers::pi;
    std::vector<cplx> s(static_cast<std::size_t>(L));
    for (int k = 1; k <= L; ++k) {
        const double th = 2.0 * pi / L * (k - 0.5);
        double c;
        cplx phase;
        if (spec.family == Family::SymbolZn) {
            c = std::cos(spec.n * th / 2.0);
            phase = std::polar(1.0, spec.n * th / 2.0);
        } else {
            c = std::cos(spec.m * th);
            phase = cplx(1.0);
        }
        if (std::abs(c) < 1e-12)
            throw ModelError("symbol_g: grid point within 1e-12 of a symbol zero");
        s[static_cast<std::size_t>(k - 1)] = phase * (c > 0 ? 1.0 : -1.0);
    }
    Matrix g(L, L, true);
    for (int a = 1; a <= L; ++a) {
        for (int b = 1; b <= L; ++b) {
            cplx acc(0.0);
            for (int k = 1; k <= L; ++k) {
                const double th = 2.0 * pi / L * (k - 0.5);
                acc += s[static_cast<std::size_t>(k - 1)] * std::polar(1.0, th * (a - b));
            }
            acc /= static_cast<double>(L);
            if (std::abs(acc.imag()) > 1e-12)
                throw ModelError("symbol_g: matrix expected to be real, imaginary residue " +
                                 format_double17(acc.imag()));
            g.set(a - 1, b - 1, acc.real());
        }
    }
    return g;
}

// Dispatch for correlation-matrix (G-type) models: TFI and the symbol families.
inline Matrix build_g(const ModelSpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::TFI: return tfi_g(spec.boundary, spec.L);
        case Family::SymbolZn:
        case Family::SymbolChiral: return symbol_g(spec);
        case Family::XX: break;
    }
    throw ConfigError("build_g: XX is an R-type model; use build_r");
}

// Dispatch for skew (R-type) models: XX.
inline SkewMatrix build_r(const ModelSpec& spec) {
    spec.validate();
    if (spec.family != Family::XX)
        throw ConfigError("build_r: only XX is an R-type model");
    return xx_r(spec.boundary, spec.L);
}

} // namespace magicminors

#endif
