#ifndef NOMAU_NOMAU_HPP
#define NOMAU_NOMAU_HPP

#include "nomau/names.hpp"
#include "nomau/permutation.hpp"
#include "nomau/term.hpp"
#include "nomau/freshness.hpp"
#include "nomau/syntax.hpp"
#include "nomau/equivariance.hpp"
#include "nomau/antiunify.hpp"
#include "nomau/subsumption.hpp"

#endif  // NOMAU_NOMAU_HPP
