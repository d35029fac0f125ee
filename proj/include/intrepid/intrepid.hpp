// SPDX-License-Identifier: Apache-2.0
//! \file intrepid.hpp  Umbrella header.

#pragma once

#include "intrepid/campaign.hpp"
#include "intrepid/common.hpp"
#include "intrepid/diagnostics.hpp"
#include "intrepid/geometry.hpp"
#include "intrepid/kernel.hpp"
#include "intrepid/oracle.hpp"
#include "intrepid/parent.hpp"
#include "intrepid/proposal.hpp"
#include "intrepid/rng.hpp"
#include "intrepid/target.hpp"
#include "intrepid/targets.hpp"
