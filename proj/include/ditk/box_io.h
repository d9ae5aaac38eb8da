// Copyright 2026 The ditk Authors.
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

// JSON forms of boxes, games and observed data.
//
//   box:   {"a_size","b_size","x_size","y_size","p": [x][y][a][b]}
//   game:  sizes, "q": [x][y], "win": 0/1 table in [a][b][x][y] order
//   multi: sizes, "n", "p": flat array in the MultiRoundBox index order
//   data:  sizes, "a","b","x","y": equal-length integer arrays,
//          optional "q": [x][y] (uniform when absent)
//
// Malformed documents throw std::invalid_argument.

#ifndef DITK_BOX_IO_H_
#define DITK_BOX_IO_H_

#include <string>

#include <json.hpp>

#include "ditk/boxes.h"

namespace ditk {

using Json = nlohmann::json;

Alphabets AlphabetsFromJson(const Json& j);
void AlphabetsToJson(const Alphabets& alphabets, Json& j);

SingleRoundBox BoxFromJson(const Json& j, double tol = kLoadTolerance,
                           bool renormalize = false);
Json BoxToJson(const SingleRoundBox& box);

InputDistribution InputDistributionFromJson(const Json& q, int x_size,
                                            int y_size);
Json InputDistributionToJson(const InputDistribution& q);

Game GameFromJson(const Json& j);
Json GameToJson(const Game& game);

MultiRoundBox MultiRoundBoxFromJson(const Json& j,
                                    double tol = kLoadTolerance);
Json MultiRoundBoxToJson(const MultiRoundBox& box);

struct DataFile {
  Alphabets alphabets;
  ObservedData data;
  InputDistribution q = InputDistribution::Uniform(1, 1);
};

DataFile DataFromJson(const Json& j);
Json DataToJson(const DataFile& file);

// Throws std::runtime_error when the file cannot be read or parsed.
Json ReadJsonFile(const std::string& path);

}  // namespace ditk

#endif  // DITK_BOX_IO_H_
