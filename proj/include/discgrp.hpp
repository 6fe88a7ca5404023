/* Copyright 2026 The discgrp Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include "discgrp/error.hpp"
#include "discgrp/linalg.hpp"
#include "discgrp/space.hpp"
#include "discgrp/random.hpp"
#include "discgrp/correspondence.hpp"
#include "discgrp/intertwiners.hpp"
#include "discgrp/disc_group.hpp"
#include "discgrp/matrix_rep.hpp"
#include "discgrp/morita.hpp"
#include "discgrp/hardy_eval.hpp"
#include "discgrp/json_io.hpp"
#include "discgrp/verify.hpp"
