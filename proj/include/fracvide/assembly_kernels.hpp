#pragma once

// Kernels that fill the integral-operator matrices C, D, E, H of a
// CollocationSystem whose basis, rules and scalar fields are already set.
//
// The parallel kernel evaluates every basis function at once per quadrature
// point in the z = theta^lambda variable and splits rows across OpenMP
// threads. The serial kernel is the literal triple sum with one basis
// evaluation per (i, j, k); it is kept as the reference for tests and the
// benchmark.

#include "fracvide/collocate.hpp"
#include "fracvide/problem.hpp"

namespace fracvide {

void assemble_operators_parallel(const TransformedProblem& tp, CollocationSystem& sys);
void assemble_operators_serial(const TransformedProblem& tp, CollocationSystem& sys);

/// Threads the parallel kernel will use (1 without OpenMP).
int assembly_threads();

}  // namespace fracvide
