#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace sectionlab {

enum class GroupTag { SpecialOrthogonal, Torus, PlusMinusIdentity, Finite };

std::string to_string(GroupTag tag);
GroupTag group_tag_from_string(const std::string& s);

/// A weighted finite set of orthogonal n x n matrices standing in for a compact group's Haar measure.
struct GroupSample {
  GroupTag tag = GroupTag::Finite;
  int dim = 0;
  std::uint64_t seed = 0;
  std::vector<Eigen::MatrixXd> elements;
  std::vector<double> weights;

  int size() const { return static_cast<int>(elements.size()); }
};

/// Haar-uniform random rotation: QR of a Gaussian matrix with sign and determinant correction.
Eigen::MatrixXd haar_rotation(int n, std::mt19937_64& rng);

/// Block-diagonal element of the standard maximal torus T^{[n/2]} in SO(n).
/// angles.size() must equal n/2; the last coordinate is fixed when n is odd.
Eigen::MatrixXd torus_element(int n, std::span<const double> angles);

/// Rotation by `angle` in the (e_i, e_j) coordinate plane.
Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle);

/// Draws a group sample.
///  SpecialOrthogonal: `count` Haar rotations.
///  Torus: a randomly shifted product lattice of angles, m points per circle factor with
///         m = round(count^{1/[n/2]}), so size() == m^{[n/2]}; every element's angles are
///         marginally uniform and the lattice averages trigonometric content of degree < m exactly.
///  PlusMinusIdentity: {Id, -Id}, count and seed ignored.
/// Equal weights; deterministic for a fixed seed.
GroupSample sample_group(GroupTag tag, int n, int count, std::uint64_t seed);

/// Torus elements with independent uniform angles (no lattice structure).
GroupSample sample_torus_independent(int n, int count, std::uint64_t seed);

/// User-supplied finite list; validates orthogonality to 1e-10.
GroupSample finite_group(int n, std::vector<Eigen::MatrixXd> elements);

/// Cyclic group of order k acting by rotations in the (e_i, e_j) plane.
GroupSample cyclic_group(int n, int order, int i = 0, int j = 1);

/// Rotation group of the cube [-1,1]^n: signed permutation matrices with determinant +1.
GroupSample cube_rotation_group(int n);

/// max_k ||g_k^T g_k - Id||_inf over the sample.
double orthogonality_defect(const GroupSample& g);

}  // namespace sectionlab
