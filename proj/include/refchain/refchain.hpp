#pragma once

#include "refchain/config.hpp"
#include "refchain/constraints.hpp"
#include "refchain/corpus.hpp"
#include "refchain/discourse.hpp"
#include "refchain/errors.hpp"
#include "refchain/eval.hpp"
#include "refchain/proposal.hpp"
#include "refchain/refprop.hpp"
#include "refchain/resolver.hpp"
#include "refchain/text.hpp"
