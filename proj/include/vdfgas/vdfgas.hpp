#pragma once

#include "vdfgas/abi.hpp"
#include "vdfgas/bignum.hpp"
#include "vdfgas/errors.hpp"
#include "vdfgas/gas_model.hpp"
#include "vdfgas/json_io.hpp"
#include "vdfgas/keccak.hpp"
#include "vdfgas/primality.hpp"
#include "vdfgas/reference_data.hpp"
#include "vdfgas/rng.hpp"
#include "vdfgas/vdf.hpp"
