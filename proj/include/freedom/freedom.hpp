// Copyright 2026 The freedom-rec Authors.
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


#pragma once

#include "freedom/core/errors.hpp"
#include "freedom/core/matrix.hpp"
#include "freedom/core/power_iteration.hpp"
#include "freedom/core/random.hpp"
#include "freedom/core/sparse_ops.hpp"
#include "freedom/data/prepare.hpp"
#include "freedom/data/synthetic.hpp"
#include "freedom/eval/ranking.hpp"
#include "freedom/eval/split.hpp"
#include "freedom/graph/interaction_graph.hpp"
#include "freedom/graph/modality_graph.hpp"
#include "freedom/io/checkpoint.hpp"
#include "freedom/io/dataset.hpp"
#include "freedom/io/feature_file.hpp"
#include "freedom/model/model.hpp"
#include "freedom/run/run_config.hpp"
#include "freedom/spectral/spectral.hpp"
#include "freedom/train/bpr.hpp"
#include "freedom/train/config.hpp"
#include "freedom/train/optim.hpp"
#include "freedom/train/trainer.hpp"
