#pragma once

#include <span>
#include <vector>

#include "rrm/types.hpp"

namespace rrm {

struct DimSpec;

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix kron_all(std::span<const CMatrix> factors);
CVector kron(const CVector& a, const CVector& b);

// tr_0[(A ⊗ I) X] for X on d^m with party 0 the most significant index.
CMatrix contract_first(const CMatrix& x, const CMatrix& a);

// tr[X (A_0 ⊗ A_1 ⊗ ...)] evaluated party by party.
cplx product_expectation(const CMatrix& x, std::span<const CMatrix> ops);

// (I ⊗ U_site ⊗ I) X (I ⊗ U_site ⊗ I)^†
CMatrix apply_local(const CMatrix& x, const DimSpec& dims, int site, const CMatrix& u);

// (I ⊗ A_site ⊗ I) v
CVector apply_local(const CVector& v, const DimSpec& dims, int site, const CMatrix& a);

CMatrix partial_trace(const CMatrix& x, const DimSpec& dims, std::vector<int> keep);
CMatrix partial_transpose(const CMatrix& x, const DimSpec& dims, int site);

RVector singular_values(const CMatrix& x);
RVector singular_values(const RMatrix& x);
double trace_norm(const CMatrix& x);
double hs_norm(const CMatrix& x);
RVector hermitian_eigenvalues(const CMatrix& x);

double hermitian_residual(const CMatrix& x);
double unitarity_residual(const CMatrix& x);

// Row-major digits of a flat index, most significant first.
std::vector<int> digits(long flat, int base, int count);
long ipow(long base, int exp);

}  // namespace rrm
