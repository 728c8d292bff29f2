#pragma once

#include <memory>
#include <span>
#include <vector>

#include "latdiv/linalg.hpp"
#include "latdiv/linearcode.hpp"
#include "latdiv/numberfield.hpp"

namespace latdiv {

struct LatticePoint {
  std::vector<double> x;                 // length nN, channel coordinate order
  std::vector<int> codeword;             // length N
  std::vector<long long> ideal_coords;   // length nN, per-block ideal coordinates
};

// Construction A lattice from (field, residue-degree-one prime ideal, code):
// block b of a point is c_b * (1,...,1) + z_b * (D*M). The dense generator
// is the block matrix [[I_k x M, A x M], [0, I_{N-k} x DM]] in the code's
// systematic coordinate order.
class ConstructionALattice {
 public:
  ConstructionALattice(NumberField field, PrimeIdealAboveP ideal, LinearCode code);

  const NumberField& field() const { return field_; }
  const PrimeIdealAboveP& ideal() const { return ideal_; }
  const LinearCode& code() const { return code_; }
  const TannerGraph& tanner() const;  // binary codes only
  const Mat& ideal_basis() const { return ideal_basis_; }  // D*M
  const Mat& generator() const { return gen_; }            // systematic order
  int dim() const { return dim_; }                         // nN
  double volume() const { return volume_; }
  double log_volume() const { return log_volume_; }

  // Solves u * generator = x (x given in channel order) and reports u.
  std::vector<double> coordinates_of(std::span<const double> x) const;

 private:
  NumberField field_;
  PrimeIdealAboveP ideal_;
  LinearCode code_;
  Mat ideal_basis_;
  Mat gen_;
  int dim_ = 0;
  double volume_ = 0, log_volume_ = 0;
  std::shared_ptr<const Lu> gen_lu_;  // factorization of generator^t
  std::shared_ptr<const TannerGraph> tanner_;
};

ConstructionALattice build_lattice(NumberField field, PrimeIdealAboveP ideal, LinearCode code);

LatticePoint encode_point(const ConstructionALattice& lat, std::span<const int> codeword,
                          std::span<const long long> ideal_coords);

bool check_membership(const ConstructionALattice& lat, std::span<const double> x, double tol = 1e-6);

struct ProductDistance {
  double d_pmin = 0;
  double nd_pmin = 0;
  std::vector<long long> argmin;
};

// Box enumeration of min prod_j |sigma_j(x)| over nonzero integral elements
// with coordinates bounded by enum_radius. Totally real fields only.
ProductDistance min_product_distance(const NumberField& field, double enum_radius);

// The classical p-ary Construction A generator (1/sqrt p) [[I_k, A],[0, p I]]
// that the cyclotomic route with trace form scaled by 1/p collapses to; an
// N x N matrix, systematic coordinate order.
Mat cyclotomic_scaled_generator(const LinearCode& code);

}  // namespace latdiv
