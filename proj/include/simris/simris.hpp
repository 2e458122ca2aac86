// SPDX-License-Identifier: Apache-2.0
//
// simris: RIS-assisted physical channel simulator
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
// ------------------------------------------------------------------------


#ifndef SIMRIS_SIMRIS_HPP
#define SIMRIS_SIMRIS_HPP

#include "arrays.hpp"
#include "channel_mmwave.hpp"
#include "channel_sub6.hpp"
#include "config.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "multi_ris.hpp"
#include "propagation.hpp"
#include "random.hpp"
#include "ris_control.hpp"
#include "scattering.hpp"
#include "scene.hpp"

#endif
