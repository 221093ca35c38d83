// Copyright 2026 The qsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qsdp/channels.hpp"
#include "qsdp/config.hpp"
#include "qsdp/entropy.hpp"
#include "qsdp/error.hpp"
#include "qsdp/json_io.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/problems/capacity.hpp"
#include "qsdp/problems/channel_norms.hpp"
#include "qsdp/problems/discrimination.hpp"
#include "qsdp/problems/fidelity.hpp"
#include "qsdp/problems/separability.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/random.hpp"
#include "qsdp/sdp/sdp.hpp"
#include "qsdp/sdp/sdpa.hpp"
#include "qsdp/version.hpp"
