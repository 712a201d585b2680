#include "acnsf/projectors.hpp"

namespace acnsf {

namespace {

enum class Part { Q, P, Both };

void decompose(const VectorField& v, VectorField* qpart, VectorField* ppart) {
    const GridSpec& g = v.grid();
    const int n = g.n;
    const int dim = g.dim;
    const int nk = dim == 3 ? n : 1;
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < nk; ++k, ++flat) {
                const double kd[3] = {g.k_derivative(i), g.k_derivative(j),
                                      dim == 3 ? g.k_derivative(k) : 0.0};
                double ksq = 0.0;
                for (int a = 0; a < dim; ++a) ksq += kd[a] * kd[a];
                if (ksq == 0.0) {
                    for (int a = 0; a < dim; ++a) {
                        if (qpart) (*qpart)[a].c[flat] = cplx{0.0, 0.0};
                        if (ppart) (*ppart)[a].c[flat] = v[a].c[flat];
                    }
                    continue;
                }
                cplx kdotv{0.0, 0.0};
                for (int a = 0; a < dim; ++a) kdotv += kd[a] * v[a].c[flat];
                kdotv /= ksq;
                for (int a = 0; a < dim; ++a) {
                    cplx q = kd[a] * kdotv;
                    if (qpart) (*qpart)[a].c[flat] = q;
                    if (ppart) (*ppart)[a].c[flat] = v[a].c[flat] - q;
                }
            }
        }
    }
}

}  // namespace

VectorField project_Q(const VectorField& v) {
    VectorField q(v.grid());
    decompose(v, &q, nullptr);
    return q;
}

VectorField project_P(const VectorField& v) {
    VectorField p(v.grid());
    decompose(v, nullptr, &p);
    return p;
}

HodgePair hodge_decompose(const VectorField& v) {
    HodgePair h{VectorField(v.grid()), VectorField(v.grid())};
    decompose(v, &h.gradient, &h.solenoidal);
    return h;
}

}  // namespace acnsf
