#include "qumf/qubo.hpp"

#include "qumf/errors.hpp"

#include <cmath>
#include <string>

namespace qumf {

Qubo::Qubo(const std::size_t d, std::vector<double> quadratic, std::vector<double> linear, const double offset)
    : d_(d), q_(std::move(quadratic)), s_(std::move(linear)), offset_(offset) {
    if (q_.size() != d_ * d_ || s_.size() != d_) {
        throw dimension_mismatch("QUBO coefficient arrays do not match the dimension");
    }
    if (!std::isfinite(offset_)) {
        throw data_error("QUBO offset must be finite");
    }
    for (std::size_t i = 0; i < d_; ++i) {
        if (!std::isfinite(s_[i])) {
            throw data_error("QUBO linear coefficients must be finite");
        }
        for (std::size_t j = 0; j < d_; ++j) {
            const double v = q_[i * d_ + j];
            if (!std::isfinite(v)) {
                throw data_error("QUBO quadratic coefficients must be finite");
            }
            if (j > i && std::abs(v - q_[j * d_ + i]) > 1e-12) {
                throw data_error("QUBO quadratic matrix must be symmetric");
            }
        }
    }
}

namespace {

void check_lambda(const double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw data_error("lambda must be a positive finite number");
    }
}

std::vector<double> linear_terms(const PreferenceMatrix &P, const double lambda, const std::vector<double> &gram) {
    // Diagonal of P^T P is the consensus size, i.e. the column sum P^T 1.
    std::vector<double> s(P.m());
    for (std::size_t j = 0; j < P.m(); ++j) {
        s[j] = 1.0 - 2.0 * lambda * gram[j * P.m() + j];
    }
    return s;
}

Qubo finish(const PreferenceMatrix &P, const double lambda, std::vector<double> gram) {
    std::vector<double> s = linear_terms(P, lambda, gram);
    for (double &v : gram) {
        v *= lambda;
    }
    return Qubo{P.m(), std::move(gram), std::move(s), 0.0};
}

}  // namespace

Qubo build_mmf_qubo(const PreferenceMatrix &P, const double lambda) {
    check_lambda(lambda);
    const std::size_t m = P.m();
    std::vector<double> gram(m * m, 0.0);
    const auto cols = static_cast<std::ptrdiff_t>(m);
    // Gram row i is the sum of the P rows that contain model i; each thread owns whole rows.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t a = 0; a < cols; ++a) {
        const auto i = static_cast<std::size_t>(a);
        const auto column = P.column(i);
        double *out = gram.data() + i * m;
        for (std::size_t r = 0; r < P.n(); ++r) {
            if (column[r] == 0) {
                continue;
            }
            const auto row = P.row(r);
            for (std::size_t j = 0; j < m; ++j) {
                out[j] += static_cast<double>(row[j]);
            }
        }
    }
    return finish(P, lambda, std::move(gram));
}

namespace reference {

Qubo build_mmf_qubo(const PreferenceMatrix &P, const double lambda) {
    check_lambda(lambda);
    const std::size_t m = P.m();
    std::vector<double> gram(m * m, 0.0);
    for (std::size_t r = 0; r < P.n(); ++r) {
        const auto row = P.row(r);
        for (std::size_t i = 0; i < m; ++i) {
            if (row[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                gram[i * m + j] += static_cast<double>(row[j]);
            }
        }
    }
    return finish(P, lambda, std::move(gram));
}

}  // namespace reference

double energy(const Qubo &q, const std::span<const std::uint8_t> z) {
    if (z.size() != q.d()) {
        throw dimension_mismatch("assignment length " + std::to_string(z.size()) + " does not match QUBO dimension " + std::to_string(q.d()));
    }
    double e = q.offset();
    for (std::size_t i = 0; i < q.d(); ++i) {
        if (z[i] == 0) {
            continue;
        }
        e += q.linear()[i];
        const auto row = q.quadratic_row(i);
        for (std::size_t j = 0; j < q.d(); ++j) {
            if (z[j] != 0) {
                e += row[j];
            }
        }
    }
    return e;
}

Assignment Reduction::extend(const std::span<const std::uint8_t> reduced_bits) const {
    if (reduced_bits.size() != kept.size()) {
        throw dimension_mismatch("reduced assignment does not match the reduced dimension");
    }
    Assignment z(forced_ones.size() + kept.size(), 0);
    for (const int f : forced_ones) {
        z[static_cast<std::size_t>(f)] = 1;
    }
    for (std::size_t k = 0; k < kept.size(); ++k) {
        z[static_cast<std::size_t>(kept[k])] = reduced_bits[k];
    }
    return z;
}

Reduction reduce_forced(const PreferenceMatrix &P, const Qubo &q) {
    if (P.m() != q.d()) {
        throw dimension_mismatch("preference matrix and QUBO disagree on the model count");
    }
    const std::size_t d = q.d();
    std::vector<bool> forced(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        if (consensus_size(P, i) == 0) {
            continue;
        }
        bool isolated = true;
        const auto row = q.quadratic_row(i);
        for (std::size_t j = 0; j < d && isolated; ++j) {
            isolated = j == i || row[j] == 0.0;
        }
        // Selecting an isolated variable changes the energy by exactly Q_ii + s_i.
        forced[i] = isolated && q.quadratic(i, i) + q.linear()[i] <= 0.0;
    }

    Reduction out;
    for (std::size_t i = 0; i < d; ++i) {
        (forced[i] ? out.forced_ones : out.kept).push_back(static_cast<int>(i));
    }

    double offset = q.offset();
    for (const int f : out.forced_ones) {
        const auto fi = static_cast<std::size_t>(f);
        offset += q.linear()[fi];
        for (const int g : out.forced_ones) {
            offset += q.quadratic(fi, static_cast<std::size_t>(g));
        }
    }
    const std::size_t k = out.kept.size();
    std::vector<double> quad(k * k);
    std::vector<double> lin(k);
    for (std::size_t a = 0; a < k; ++a) {
        const auto ia = static_cast<std::size_t>(out.kept[a]);
        lin[a] = q.linear()[ia];
        for (const int f : out.forced_ones) {
            lin[a] += 2.0 * q.quadratic(ia, static_cast<std::size_t>(f));
        }
        for (std::size_t b = 0; b < k; ++b) {
            quad[a * k + b] = q.quadratic(ia, static_cast<std::size_t>(out.kept[b]));
        }
    }
    out.reduced = Qubo{k, std::move(quad), std::move(lin), offset};
    return out;
}

}  // namespace qumf
