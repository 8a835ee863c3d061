#ifndef JACOBI_MV_HPP
#define JACOBI_MV_HPP

#include <jacobi_mv/errors.hpp>
#include <jacobi_mv/rational.hpp>
#include <jacobi_mv/symbolic.hpp>
#include <jacobi_mv/multiindex.hpp>
#include <jacobi_mv/polynomial.hpp>
#include <jacobi_mv/linalg.hpp>
#include <jacobi_mv/moments.hpp>
#include <jacobi_mv/orthodecomp.hpp>
#include <jacobi_mv/cap_operators.hpp>
#include <jacobi_mv/jacobi_sequences.hpp>
#include <jacobi_mv/closed_forms.hpp>

#endif
