#ifndef TFACT_TFACT_HPP
#define TFACT_TFACT_HPP

#include "tfact/coset_space.hpp"
#include "tfact/coxeter.hpp"
#include "tfact/dioid.hpp"
#include "tfact/element_sets.hpp"
#include "tfact/errors.hpp"
#include "tfact/factor.hpp"
#include "tfact/golden.hpp"
#include "tfact/hecke.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/perm_io.hpp"
#include "tfact/permutation.hpp"
#include "tfact/random.hpp"

#endif  // TFACT_TFACT_HPP
