#include "mps/linear.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

#include "mps/parallel.hpp"

namespace mps {

namespace {

using Mat = Eigen::MatrixXcd;
const cplx kI{0.0, 1.0};

Mat leray_matrix(const std::array<int, 3>& k, int dim) {
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) k2 += double(k[a]) * k[a];
    Mat p = Mat::Identity(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) p(a, b) -= double(k[a]) * k[b] / k2;
    return p;
}

// Matrix of v -> i k x v.
Mat curl_matrix_3d(const std::array<int, 3>& k) {
    Mat c = Mat::Zero(3, 3);
    c(0, 1) = -k[2], c(0, 2) = k[1];
    c(1, 0) = k[2], c(1, 2) = -k[0];
    c(2, 0) = -k[1], c(2, 1) = k[0];
    return kI * c;
}

Mat zero_mode_propagator(const ModelSpec& spec, double dt) {
    int dim = spec.dim();
    int block = dim + spec.w_components();
    Mat p = Mat::Identity(block, block);
    double damp = std::exp(-spec.damping_coef() * dt);
    for (int a = dim; a < block; ++a) p(a, a) = damp;
    return p;
}

}  // namespace

Eigen::MatrixXcd linear_matrix(const std::array<int, 3>& k,
                               const ModelSpec& spec) {
    if (k[0] == 0 && k[1] == 0 && k[2] == 0)
        throw std::invalid_argument(
            "linear_matrix: k = 0 evolves in closed form, not by this matrix");
    int dim = spec.dim();
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) k2 += double(k[a]) * k[a];
    double r = std::sqrt(k2);

    double mu_diss = spec.u_dissipation().symbol()(r);
    double mw_diss = spec.w_dissipation().symbol()(r);
    double cu = (spec.params.nu + spec.params.kappa) * mu_diss;
    double cw = spec.params.gamma * mw_diss + spec.damping_coef();
    double cross = spec.cross_coef();

    int block = dim + spec.w_components();
    Mat a = Mat::Zero(block, block);

    if (dim == 3) {
        Mat p = leray_matrix(k, 3);
        Mat curl = curl_matrix_3d(k);
        a.block(0, 0, 3, 3) = -cu * Mat::Identity(3, 3);
        a.block(0, 3, 3, 3) = cross * p * curl;
        a.block(3, 0, 3, 3) = cross * curl;
        a.block(3, 3, 3, 3) = -cw * Mat::Identity(3, 3);
        if (spec.has_graddiv()) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    a(3 + i, 3 + j) -= spec.params.mu * k[i] * k[j];
        }
    } else {
        // Basis (u1, u2, w); the couplings are the perp-gradient column
        // i(-k2, k1)^T on the u rows and its row form on the w row.
        Mat p = leray_matrix(k, 2);
        Eigen::Vector2cd perp(kI * double(-k[1]), kI * double(k[0]));
        Eigen::Vector2cd col = p * perp;
        a(0, 0) = a(1, 1) = -cu;
        a(0, 2) = cross * col(0);
        a(1, 2) = cross * col(1);
        a(2, 0) = cross * perp(0);
        a(2, 1) = cross * perp(1);
        a(2, 2) = -cw;
    }
    return a;
}

Eigen::MatrixXcd linear_propagator(const std::array<int, 3>& k,
                                   const ModelSpec& spec, double dt) {
    if (dt < 0.0) throw std::invalid_argument("linear_propagator: dt < 0");
    if (k[0] == 0 && k[1] == 0 && k[2] == 0)
        return zero_mode_propagator(spec, dt);
    if (dt == 0.0) {
        int block = spec.dim() + spec.w_components();
        return Mat::Identity(block, block);
    }
    Mat a = dt * linear_matrix(k, spec);
    return a.exp();
}

PropagatorTable build_propagator_table(const Grid& grid, const ModelSpec& spec,
                                       double dt) {
    if (grid.dim != spec.dim())
        throw std::invalid_argument("propagator table: grid/spec dimension mismatch");
    PropagatorTable t;
    t.grid = grid;
    t.block = grid.dim + spec.w_components();
    t.dt = dt;
    const int b2 = t.block * t.block;
    t.mats.assign(grid.size() * b2, cplx{});
    parallel_for(grid.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t f = lo; f < hi; ++f) {
            auto k = grid.wavevector(f);
            Mat p = linear_propagator(k, spec, dt);
            for (int i = 0; i < t.block; ++i)
                for (int j = 0; j < t.block; ++j)
                    t.mats[f * b2 + i * t.block + j] = p(i, j);
        }
    });
    return t;
}

void apply_propagator(const PropagatorTable& table, SpectralVectorField& u,
                      SpectralVectorField& w) {
    if (!(u.grid == table.grid) || !(w.grid == table.grid))
        throw std::invalid_argument("apply_propagator: grid mismatch");
    const int dim = table.grid.dim;
    const int wb = table.block - dim;
    if (u.ncomp() != dim || w.ncomp() != wb)
        throw std::invalid_argument("apply_propagator: component mismatch");
    const int b = table.block;
    const int b2 = b * b;
    parallel_for(table.grid.size(), [&](std::size_t lo, std::size_t hi) {
        cplx in[6], out[6];
        for (std::size_t f = lo; f < hi; ++f) {
            for (int a = 0; a < dim; ++a) in[a] = u.comp[a].c[f];
            for (int a = 0; a < wb; ++a) in[dim + a] = w.comp[a].c[f];
            const cplx* m = &table.mats[f * b2];
            for (int i = 0; i < b; ++i) {
                cplx acc{};
                for (int j = 0; j < b; ++j) acc += m[i * b + j] * in[j];
                out[i] = acc;
            }
            for (int a = 0; a < dim; ++a) u.comp[a].c[f] = out[a];
            for (int a = 0; a < wb; ++a) w.comp[a].c[f] = out[dim + a];
        }
    });
}

}  // namespace mps
