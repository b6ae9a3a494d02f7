// SPDX-License-Identifier: Apache-2.0
//
// rdars-sim: link-level simulation and closed-form rate analysis for
// reconfigurable distributed antenna / reflecting surface aided uplinks.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RDARS_RDARS_HPP
#define RDARS_RDARS_HPP

#include "rdars/analytic_simo.hpp"
#include "rdars/analytic_siso.hpp"
#include "rdars/channel.hpp"
#include "rdars/figures.hpp"
#include "rdars/montecarlo.hpp"
#include "rdars/quadrature.hpp"
#include "rdars/rdars_config.hpp"
#include "rdars/rng.hpp"
#include "rdars/scenario.hpp"
#include "rdars/snr_engine.hpp"
#include "rdars/units.hpp"

#endif
