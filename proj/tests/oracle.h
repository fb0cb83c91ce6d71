// Copyright 2026 The ALSO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-side reference implementations. They build full 2^n matrices
// element by element and share no code with the library kernels.
#ifndef ALSO_TESTS_ORACLE_H
#define ALSO_TESTS_ORACLE_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<cd, Eigen::Dynamic, 1>;

inline Mat mat2(cd a, cd b, cd c, cd d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline Mat eye(int dim) {
    return Mat::Identity(dim, dim);
}

inline Mat ry(double t) {
    return mat2(std::cos(t / 2), std::sin(t / 2), -std::sin(t / 2), std::cos(t / 2));
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            for (int k = 0; k < b.rows(); ++k) {
                for (int l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

inline Vec kron_vec(const Vec &a, const Vec &b) {
    Vec out(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i) {
        for (int k = 0; k < b.size(); ++k) {
            out(i * b.size() + k) = a(i) * b(k);
        }
    }
    return out;
}

inline int bit(uint64_t index, int n, int q) {
    return static_cast<int>((index >> (n - 1 - q)) & 1);
}

// Full 2^n operator of `gate` acting on `targets` (targets[0] most significant).
inline Mat embed(const Mat &gate, const std::vector<int> &targets, int n) {
    const uint64_t dim = uint64_t{1} << n;
    Mat out = Mat::Zero(dim, dim);
    for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) {
            bool others_equal = true;
            for (int q = 0; q < n && others_equal; ++q) {
                bool is_target = false;
                for (int t : targets) {
                    is_target |= (t == q);
                }
                if (!is_target && bit(r, n, q) != bit(c, n, q)) {
                    others_equal = false;
                }
            }
            if (!others_equal) {
                continue;
            }
            int gr = 0, gc = 0;
            for (int t : targets) {
                gr = (gr << 1) | bit(r, n, t);
                gc = (gc << 1) | bit(c, n, t);
            }
            out(r, c) = gate(gr, gc);
        }
    }
    return out;
}

inline Mat cnot() {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

// Default brick: [RY(g0) x RY(g1)] . CNOT . [RY(g2) x RY(g3)].
inline Mat brick(const std::vector<double> &g) {
    return kron(ry(g[0]), ry(g[1])) * cnot() * kron(ry(g[2]), ry(g[3]));
}

// U(theta) for the default brick, placements re-derived here:
// layer j, block i -> a = (2i + j) mod n, b = a + 1 mod n; theta offset (i*d + j)*4.
inline Mat circuit(int n, int d, const std::vector<double> &theta) {
    Mat u = eye(1 << n);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n / 2; ++i) {
            const int a = (2 * i + j) % n;
            const int b = (a + 1) % n;
            const size_t off = (static_cast<size_t>(i) * d + j) * 4;
            std::vector<double> g(theta.begin() + off, theta.begin() + off + 4);
            u = embed(brick(g), {a, b}, n) * u;
        }
    }
    return u;
}

// U(theta)|psi> one brick at a time, same conventions as circuit().
inline Vec apply_circuit(int n, int d, const std::vector<double> &theta, Vec psi) {
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < n / 2; ++i) {
            const int a = (2 * i + j) % n;
            const size_t off = (static_cast<size_t>(i) * d + j) * 4;
            std::vector<double> g(theta.begin() + off, theta.begin() + off + 4);
            psi = embed(brick(g), {a, (a + 1) % n}, n) * psi;
        }
    }
    return psi;
}

// <psi| O_q |psi> for a 2x2 operator O on qubit q.
inline cd local_expectation(const Vec &psi, int n, const Mat &o, int q) {
    const uint64_t mask = uint64_t{1} << (n - 1 - q);
    cd acc = 0.0;
    for (uint64_t x = 0; x < static_cast<uint64_t>(psi.size()); ++x) {
        const int r = bit(x, n, q);
        for (int c = 0; c < 2; ++c) {
            const uint64_t y = c ? (x | mask) : (x & ~mask);
            acc += std::conj(psi(x)) * o(r, c) * psi(y);
        }
    }
    return acc;
}

// Partial trace of |psi><psi| onto `keep` (ascending).
inline Mat reduced(const Vec &psi, int n, const std::vector<int> &keep) {
    const int k = static_cast<int>(keep.size());
    Mat out = Mat::Zero(1 << k, 1 << k);
    const uint64_t dim = uint64_t{1} << n;
    for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) {
            bool match = true;
            for (int q = 0; q < n && match; ++q) {
                bool kept = false;
                for (int t : keep) {
                    kept |= (t == q);
                }
                if (!kept && bit(r, n, q) != bit(c, n, q)) {
                    match = false;
                }
            }
            if (!match) {
                continue;
            }
            int lr = 0, lc = 0;
            for (int t : keep) {
                lr = (lr << 1) | bit(r, n, t);
                lc = (lc << 1) | bit(c, n, t);
            }
            out(lr, lc) += psi(r) * std::conj(psi(c));
        }
    }
    return out;
}

}  // namespace oracle

#endif
