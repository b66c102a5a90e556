// Copyright 2026 The Basa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef BASA_BASA_HPP_
#define BASA_BASA_HPP_

#include "basa/classifiers.hpp"
#include "basa/commands.hpp"
#include "basa/corpus.hpp"
#include "basa/dataset.hpp"
#include "basa/error.hpp"
#include "basa/evaluation.hpp"
#include "basa/features.hpp"
#include "basa/pos.hpp"
#include "basa/ranking.hpp"
#include "basa/text.hpp"

#endif  // BASA_BASA_HPP_
