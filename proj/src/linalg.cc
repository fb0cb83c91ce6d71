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

#include "also/linalg.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

namespace also {

ComplexMatrix dagger(const ComplexMatrix &m) {
    return m.adjoint();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

double max_abs(const ComplexMatrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return max_abs(m.adjoint() * m - id) < tol;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m - m.adjoint()) < tol;
}

double spectral_norm(const ComplexMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(hermitian), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

cplx trace_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw std::invalid_argument("trace_product: shape mismatch");
    }
    return a.cwiseProduct(b.transpose()).sum();
}

double trace_product_hermitian(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("trace_product_hermitian: shape mismatch");
    }
    // tr(ab) = sum_ij a_ij b_ji = sum_ij a_ij conj(b_ij) for Hermitian b.
    const cplx *pa = a.data();
    const cplx *pb = b.data();
    double acc = 0.0;
    const Eigen::Index total = a.size();
    for (Eigen::Index k = 0; k < total; ++k) {
        acc += pa[k].real() * pb[k].real() + pa[k].imag() * pb[k].imag();
    }
    return acc;
}

namespace kernels {

void apply_to_vector(std::span<cplx> amps, int num_qubits, const ComplexMatrix &gate, std::span<const int> targets) {
    const int k = static_cast<int>(targets.size());
    const size_t local_dim = size_t{1} << k;
    std::vector<size_t> offsets(local_dim, 0);
    size_t mask = 0;
    for (int t = 0; t < k; ++t) {
        size_t bit = size_t{1} << (num_qubits - 1 - targets[t]);
        mask |= bit;
        for (size_t l = 0; l < local_dim; ++l) {
            if ((l >> (k - 1 - t)) & 1) {
                offsets[l] |= bit;
            }
        }
    }
    const size_t dim = size_t{1} << num_qubits;
    if (k == 1) {
        const cplx g00 = gate(0, 0), g01 = gate(0, 1), g10 = gate(1, 0), g11 = gate(1, 1);
        const size_t o1 = offsets[1];
        for (size_t base = 0; base < dim; ++base) {
            if (base & mask) {
                continue;
            }
            cplx a0 = amps[base];
            cplx a1 = amps[base | o1];
            amps[base] = g00 * a0 + g01 * a1;
            amps[base | o1] = g10 * a0 + g11 * a1;
        }
        return;
    }
    std::vector<cplx> in(local_dim), out(local_dim);
    for (size_t base = 0; base < dim; ++base) {
        if (base & mask) {
            continue;
        }
        for (size_t l = 0; l < local_dim; ++l) {
            in[l] = amps[base | offsets[l]];
        }
        for (size_t r = 0; r < local_dim; ++r) {
            cplx acc = 0.0;
            for (size_t c = 0; c < local_dim; ++c) {
                acc += gate(r, c) * in[c];
            }
            out[r] = acc;
        }
        for (size_t l = 0; l < local_dim; ++l) {
            amps[base | offsets[l]] = out[l];
        }
    }
}

namespace {

// Index offsets of the 4 basis states of local positions (p, q); p is the high bit.
std::array<size_t, 4> pair_offsets(int num_qubits, int p, int q) {
    size_t bp = size_t{1} << (num_qubits - 1 - p);
    size_t bq = size_t{1} << (num_qubits - 1 - q);
    return {0, bq, bp, bp | bq};
}

template <typename T>
void conjugate_two_qubit_impl(T *data, int num_qubits, const T (&gm)[4][4], const T (&gd)[4][4], int p, int q) {
    const size_t dim = size_t{1} << num_qubits;
    const auto off = pair_offsets(num_qubits, p, q);
    const size_t mask = off[3];

    // Right multiply: each row v <- v g, i.e. v'[c] = sum_k v[k] g[k][c].
    for (size_t row = 0; row < dim; ++row) {
        T *v = data + row * dim;
        for (size_t base = 0; base < dim; ++base) {
            if (base & mask) {
                continue;
            }
            T a0 = v[base | off[0]], a1 = v[base | off[1]], a2 = v[base | off[2]], a3 = v[base | off[3]];
            for (int c = 0; c < 4; ++c) {
                v[base | off[c]] = a0 * gm[0][c] + a1 * gm[1][c] + a2 * gm[2][c] + a3 * gm[3][c];
            }
        }
    }

    // Left multiply by g^dagger: combine groups of 4 rows, contiguous over columns.
    std::vector<T> tmp(4 * dim);
    for (size_t base = 0; base < dim; ++base) {
        if (base & mask) {
            continue;
        }
        T *rows[4];
        for (int r = 0; r < 4; ++r) {
            rows[r] = data + (base | off[r]) * dim;
        }
        for (int r = 0; r < 4; ++r) {
            T *t = tmp.data() + r * dim;
            const T c0 = gd[r][0], c1 = gd[r][1], c2 = gd[r][2], c3 = gd[r][3];
            for (size_t col = 0; col < dim; ++col) {
                t[col] = c0 * rows[0][col] + c1 * rows[1][col] + c2 * rows[2][col] + c3 * rows[3][col];
            }
        }
        for (int r = 0; r < 4; ++r) {
            std::copy(tmp.begin() + r * dim, tmp.begin() + (r + 1) * dim, rows[r]);
        }
    }
}

template <typename Matrix>
Matrix insert_identity_impl(const Matrix &x, int num_qubits, int pos) {
    const size_t dim = size_t{1} << num_qubits;
    const size_t new_dim = dim * 2;
    // Bits above `pos` shift up by one; the inserted bit sits at (num_qubits - pos).
    const int low_bits = num_qubits - pos;
    const size_t low_mask = (size_t{1} << low_bits) - 1;
    const size_t new_bit = size_t{1} << low_bits;
    Matrix out = Matrix::Zero(new_dim, new_dim);
    auto widen = [&](size_t i) { return ((i & ~low_mask) << 1) | (i & low_mask); };
    for (size_t r = 0; r < dim; ++r) {
        const size_t wr = widen(r);
        const auto *src = x.data() + r * dim;
        auto *dst0 = out.data() + wr * new_dim;
        auto *dst1 = out.data() + (wr | new_bit) * new_dim;
        for (size_t c = 0; c < dim; ++c) {
            const size_t wc = widen(c);
            dst0[wc] = src[c];
            dst1[wc | new_bit] = src[c];
        }
    }
    return out;
}

}  // namespace

void conjugate_two_qubit(ComplexMatrix &x, int num_qubits, const ComplexMatrix &g, int p, int q) {
    cplx gm[4][4];
    cplx gd[4][4];  // g^dagger
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            gm[r][c] = g(r, c);
            gd[r][c] = std::conj(g(c, r));
        }
    }
    conjugate_two_qubit_impl(x.data(), num_qubits, gm, gd, p, q);
}

void conjugate_two_qubit(RealMatrix &x, int num_qubits, const RealMatrix &g, int p, int q) {
    double gm[4][4];
    double gd[4][4];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            gm[r][c] = g(r, c);
            gd[r][c] = g(c, r);
        }
    }
    conjugate_two_qubit_impl(x.data(), num_qubits, gm, gd, p, q);
}

void conjugate_one_qubit(ComplexMatrix &x, int num_qubits, const ComplexMatrix &g, int p) {
    const size_t dim = size_t{1} << num_qubits;
    const size_t bit = size_t{1} << (num_qubits - 1 - p);
    const cplx g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    cplx *data = x.data();
    for (size_t row = 0; row < dim; ++row) {
        cplx *v = data + row * dim;
        for (size_t base = 0; base < dim; ++base) {
            if (base & bit) {
                continue;
            }
            cplx a0 = v[base], a1 = v[base | bit];
            v[base] = a0 * g00 + a1 * g10;
            v[base | bit] = a0 * g01 + a1 * g11;
        }
    }
    const cplx d00 = std::conj(g00), d01 = std::conj(g10), d10 = std::conj(g01), d11 = std::conj(g11);
    for (size_t base = 0; base < dim; ++base) {
        if (base & bit) {
            continue;
        }
        cplx *r0 = data + base * dim;
        cplx *r1 = data + (base | bit) * dim;
        for (size_t col = 0; col < dim; ++col) {
            cplx a0 = r0[col], a1 = r1[col];
            r0[col] = d00 * a0 + d01 * a1;
            r1[col] = d10 * a0 + d11 * a1;
        }
    }
}

ComplexMatrix insert_identity(const ComplexMatrix &x, int num_qubits, int pos) {
    return insert_identity_impl(x, num_qubits, pos);
}

RealMatrix insert_identity(const RealMatrix &x, int num_qubits, int pos) {
    return insert_identity_impl(x, num_qubits, pos);
}

ComplexMatrix embed(const ComplexMatrix &op, std::span<const int> op_support, std::span<const int> target_support) {
    ComplexMatrix out = op;
    std::vector<int> current(op_support.begin(), op_support.end());
    for (int q : target_support) {
        auto it = std::lower_bound(current.begin(), current.end(), q);
        if (it != current.end() && *it == q) {
            continue;
        }
        int pos = static_cast<int>(it - current.begin());
        out = insert_identity(out, static_cast<int>(current.size()), pos);
        current.insert(it, q);
    }
    if (current.size() != target_support.size() || !std::equal(current.begin(), current.end(), target_support.begin())) {
        throw std::invalid_argument("embed: operator support is not a subset of the target support");
    }
    return out;
}

}  // namespace kernels

}  // namespace also
