#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reflekt/polyhedra.hpp"

namespace reflekt {

/// Reflection of x at the hyperplane <a, x> = beta. Throws InvalidArgument for a = 0.
Vector reflect_point(const ReflectionSpec& spec, const Vector& x);

/// Whether <a, y> <= beta.
bool in_halfspace(const ReflectionSpec& spec, const Vector& y, double tol = kDefaultTolerance);

/**
 * R_(a,beta): n-1 equations <b_j, y - x> = 0 over a complement basis of a,
 * plus <a,x> - <a,y> <= 0 and <a,x> + <a,y> <= 2 beta.
 * Generators are the identity and the reflection.
 */
PolyhedralRelation reflection_relation(const ReflectionSpec& spec, std::string label = {});

/// y when <a, y> <= beta, its reflection otherwise.
Vector canonical_preimage(const ReflectionSpec& spec, const Vector& y,
                          double tol = kDefaultTolerance);

// Indices below are 1-based.

/// (-e_k, 0): sign change of coordinate k.
ReflectionSpec sign_spec(std::size_t k, std::size_t n, Backend backend = Backend::rational);
/// (e_k - e_l, 0): transposition of coordinates k and l, domain x_k <= x_l.
ReflectionSpec transposition_spec(std::size_t k, std::size_t l, std::size_t n,
                                  Backend backend = Backend::rational);

/// S_k.
PolyhedralRelation sign_relation(std::size_t k, std::size_t n, Backend backend = Backend::rational);
/// T_{k,l}.
PolyhedralRelation transposition_relation(std::size_t k, std::size_t l, std::size_t n,
                                          Backend backend = Backend::rational);
/// E_{k,l} = (R_(e_k - e_l, 0), R_(-e_k - e_l, 0)), in that order.
std::pair<PolyhedralRelation, PolyhedralRelation> even_sign_pair(
    std::size_t k, std::size_t l, std::size_t n, Backend backend = Backend::rational);

/// Canonical preimages folded right to left: the last spec acts first.
Vector apply_preimage_chain(std::span<const ReflectionSpec> specs, const Vector& y,
                            double tol = kDefaultTolerance);
/// Same over relations; every relation must carry its reflection spec.
Vector apply_preimage_chain(std::span<const PolyhedralRelation> relations, const Vector& y,
                            double tol = kDefaultTolerance);

Vector sort_vec(const Vector& y);
Vector abs_vec(const Vector& y);
Vector sortabs_vec(const Vector& y);
/// sortabs(y) with the first entry negated when y has an odd number of negative entries.
Vector dn_canonical(const Vector& y);

}  // namespace reflekt
