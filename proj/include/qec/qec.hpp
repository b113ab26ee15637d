// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef QEC_QEC_HPP
#define QEC_QEC_HPP

#include "qec/core.hpp"
#include "qec/qstate.hpp"
#include "qec/entropy.hpp"
#include "qec/cone.hpp"
#include "qec/constructions.hpp"
#include "qec/lemma_lab.hpp"
#include "qec/tip_probe.hpp"
#include "qec/io.hpp"

#endif  // QEC_QEC_HPP
