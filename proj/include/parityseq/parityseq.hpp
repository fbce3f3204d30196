#pragma once

#include "parityseq/binomial.hpp"
#include "parityseq/congruences.hpp"
#include "parityseq/errors.hpp"
#include "parityseq/identities.hpp"
#include "parityseq/padic.hpp"
#include "parityseq/polynomial.hpp"
#include "parityseq/rational.hpp"
#include "parityseq/sequences.hpp"
#include "parityseq/transforms.hpp"
