// Umbrella header.

#ifndef PFREE_PFREE_HPP_
#define PFREE_PFREE_HPP_

#include "pfree/algebra.hpp"
#include "pfree/codec.hpp"
#include "pfree/constructions.hpp"
#include "pfree/counting.hpp"
#include "pfree/error.hpp"
#include "pfree/greedy.hpp"
#include "pfree/measure.hpp"
#include "pfree/polynomial.hpp"
#include "pfree/sampler.hpp"
#include "pfree/semigroup.hpp"
#include "pfree/version.hpp"
#include "pfree/word.hpp"
#include "pfree/wordset.hpp"

#endif  // PFREE_PFREE_HPP_
