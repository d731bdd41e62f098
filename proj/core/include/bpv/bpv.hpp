#pragma once

#include "bpv/acceptance.hpp"
#include "bpv/errors.hpp"
#include "bpv/market.hpp"
#include "bpv/numerics.hpp"
#include "bpv/profile.hpp"
#include "bpv/reference_distribution.hpp"
#include "bpv/returns.hpp"
