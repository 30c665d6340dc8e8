#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conjsym {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class NotSquare : public Error {
public:
  using Error::Error;
};

class NonFiniteValue : public Error {
public:
  using Error::Error;
};

class NotUnitary : public Error {
public:
  explicit NotUnitary(double residual)
      : Error("matrix is not unitary (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

// Raised when an eigenvalue gap falls inside the ambiguous band
// [cluster_tol/2, 2*cluster_tol]; retrying with another tolerance is expected.
class ClusteringUnstable : public Error {
public:
  ClusteringUnstable(double gap, double cluster_tol)
      : Error("eigenvalue gap " + std::to_string(gap) + " is ambiguous at cluster tolerance " +
              std::to_string(cluster_tol)),
        gap_(gap) {}
  double gap() const noexcept { return gap_; }

private:
  double gap_;
};

class NotSymmetricUnitary : public Error {
public:
  NotSymmetricUnitary(double unitary_residual, double symmetry_residual)
      : Error("matrix is not a symmetric unitary (unitary residual " +
              std::to_string(unitary_residual) + ", symmetry residual " +
              std::to_string(symmetry_residual) + ")"),
        unitary_residual_(unitary_residual), symmetry_residual_(symmetry_residual) {}
  double unitary_residual() const noexcept { return unitary_residual_; }
  double symmetry_residual() const noexcept { return symmetry_residual_; }

private:
  double unitary_residual_;
  double symmetry_residual_;
};

class InvalidBlock : public Error {
public:
  InvalidBlock(std::size_t block, const std::string& why)
      : Error("block " + std::to_string(block) + ": " + why), block_(block) {}
  std::size_t block() const noexcept { return block_; }

private:
  std::size_t block_;
};

// The conjugation does not belong to the family; carries the offending mass.
class NotMember : public Error {
public:
  NotMember(double off_block_mass, double block_defect)
      : Error("conjugation is not a member (off-block mass " + std::to_string(off_block_mass) +
              ", block defect " + std::to_string(block_defect) + ")"),
        off_block_mass_(off_block_mass), block_defect_(block_defect) {}
  double off_block_mass() const noexcept { return off_block_mass_; }
  double block_defect() const noexcept { return block_defect_; }

private:
  double off_block_mass_;
  double block_defect_;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class ClusterSetMismatch : public Error {
public:
  using Error::Error;
};

class InvalidPhi : public Error {
public:
  InvalidPhi(std::size_t grid_index, const std::string& why)
      : Error("symbol invalid at base grid point " + std::to_string(grid_index) + ": " + why),
        grid_index_(grid_index) {}
  std::size_t grid_index() const noexcept { return grid_index_; }

private:
  std::size_t grid_index_;
};

class RangeError : public Error {
public:
  using Error::Error;
};

class BadPartition : public Error {
public:
  using Error::Error;
};

class TooManyClusters : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace conjsym
