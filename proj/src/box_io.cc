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

#include "ditk/box_io.h"

#include <fstream>
#include <stdexcept>

namespace ditk {
namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int SizeField(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be a positive integer");
  }
  return v.get<int>();
}

const Json& ArrayOf(const Json& v, std::size_t size, const char* what) {
  if (!v.is_array() || v.size() != size) {
    throw std::invalid_argument(std::string(what) + ": expected an array of " +
                                std::to_string(size));
  }
  return v;
}

double Number(const Json& v, const char* what) {
  if (!v.is_number()) {
    throw std::invalid_argument(std::string(what) + ": expected a number");
  }
  return v.get<double>();
}

// Reads a nested array with the given dimensions in row-major order.
void Flatten(const Json& v, const std::vector<int>& dims, std::size_t level,
             const char* what, std::vector<double>& out) {
  ArrayOf(v, dims[level], what);
  for (const Json& e : v) {
    if (level + 1 == dims.size()) {
      out.push_back(Number(e, what));
    } else {
      Flatten(e, dims, level + 1, what, out);
    }
  }
}

std::vector<int> IntArray(const Json& j, const char* key, int bound) {
  const Json& v = Field(j, key);
  if (!v.is_array()) {
    throw std::invalid_argument(std::string("field \"") + key +
                                "\" must be an array");
  }
  std::vector<int> out;
  out.reserve(v.size());
  for (const Json& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0 ||
        e.get<long long>() >= bound) {
      throw std::invalid_argument(std::string("field \"") + key +
                                  "\" has an out-of-range entry");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace

Alphabets AlphabetsFromJson(const Json& j) {
  Alphabets s;
  s.a_size = SizeField(j, "a_size");
  s.b_size = SizeField(j, "b_size");
  s.x_size = SizeField(j, "x_size");
  s.y_size = SizeField(j, "y_size");
  return s;
}

void AlphabetsToJson(const Alphabets& s, Json& j) {
  j["a_size"] = s.a_size;
  j["b_size"] = s.b_size;
  j["x_size"] = s.x_size;
  j["y_size"] = s.y_size;
}

SingleRoundBox BoxFromJson(const Json& j, double tol, bool renormalize) {
  const Alphabets s = AlphabetsFromJson(j);
  std::vector<double> p;
  p.reserve(s.cells());
  Flatten(Field(j, "p"), {s.x_size, s.y_size, s.a_size, s.b_size}, 0, "p", p);
  return SingleRoundBox(s, std::move(p), tol, renormalize);
}

Json BoxToJson(const SingleRoundBox& box) {
  const Alphabets& s = box.alphabets();
  Json j;
  AlphabetsToJson(s, j);
  Json p = Json::array();
  for (int x = 0; x < s.x_size; ++x) {
    Json px = Json::array();
    for (int y = 0; y < s.y_size; ++y) {
      Json py = Json::array();
      for (int a = 0; a < s.a_size; ++a) {
        Json pa = Json::array();
        for (int b = 0; b < s.b_size; ++b) pa.push_back(box(x, y, a, b));
        py.push_back(std::move(pa));
      }
      px.push_back(std::move(py));
    }
    p.push_back(std::move(px));
  }
  j["p"] = std::move(p);
  return j;
}

InputDistribution InputDistributionFromJson(const Json& q, int x_size,
                                            int y_size) {
  std::vector<double> flat;
  Flatten(q, {x_size, y_size}, 0, "q", flat);
  return InputDistribution(x_size, y_size, std::move(flat));
}

Json InputDistributionToJson(const InputDistribution& q) {
  Json out = Json::array();
  for (int x = 0; x < q.x_size(); ++x) {
    Json row = Json::array();
    for (int y = 0; y < q.y_size(); ++y) row.push_back(q(x, y));
    out.push_back(std::move(row));
  }
  return out;
}

Game GameFromJson(const Json& j) {
  const Alphabets s = AlphabetsFromJson(j);
  InputDistribution q =
      InputDistributionFromJson(Field(j, "q"), s.x_size, s.y_size);
  std::vector<double> win;
  Flatten(Field(j, "win"), {s.a_size, s.b_size, s.x_size, s.y_size}, 0, "win",
          win);
  for (double w : win) {
    if (w != 0 && w != 1) {
      throw std::invalid_argument("win: entries must be 0 or 1");
    }
  }
  return Game::FromPredicate(s, std::move(q), [&](int a, int b, int x, int y) {
    const std::size_t i =
        ((static_cast<std::size_t>(a) * s.b_size + b) * s.x_size + x) *
            s.y_size + y;
    return win[i] != 0;
  });
}

Json GameToJson(const Game& game) {
  const Alphabets& s = game.alphabets();
  Json j;
  AlphabetsToJson(s, j);
  j["q"] = InputDistributionToJson(game.q());
  Json win = Json::array();
  for (int a = 0; a < s.a_size; ++a) {
    Json wa = Json::array();
    for (int b = 0; b < s.b_size; ++b) {
      Json wb = Json::array();
      for (int x = 0; x < s.x_size; ++x) {
        Json wx = Json::array();
        for (int y = 0; y < s.y_size; ++y) {
          wx.push_back(game.win(a, b, x, y) ? 1 : 0);
        }
        wb.push_back(std::move(wx));
      }
      wa.push_back(std::move(wb));
    }
    win.push_back(std::move(wa));
  }
  j["win"] = std::move(win);
  return j;
}

MultiRoundBox MultiRoundBoxFromJson(const Json& j, double tol) {
  const Alphabets s = AlphabetsFromJson(j);
  const int n = SizeField(j, "n");
  const std::size_t size = MultiRoundBox::TableSize(n, s);
  const Json& p = ArrayOf(Field(j, "p"), size, "p");
  std::vector<double> flat;
  flat.reserve(size);
  for (const Json& e : p) flat.push_back(Number(e, "p"));
  return MultiRoundBox(n, s, std::move(flat), tol);
}

Json MultiRoundBoxToJson(const MultiRoundBox& box) {
  Json j;
  AlphabetsToJson(box.alphabets(), j);
  j["n"] = box.n();
  j["p"] = box.table();
  return j;
}

DataFile DataFromJson(const Json& j) {
  DataFile file;
  file.alphabets = AlphabetsFromJson(j);
  const Alphabets& s = file.alphabets;
  file.data.a = IntArray(j, "a", s.a_size);
  file.data.b = IntArray(j, "b", s.b_size);
  file.data.x = IntArray(j, "x", s.x_size);
  file.data.y = IntArray(j, "y", s.y_size);
  file.data.Validate(s);
  file.q = j.contains("q")
               ? InputDistributionFromJson(j.at("q"), s.x_size, s.y_size)
               : InputDistribution::Uniform(s.x_size, s.y_size);
  return file;
}

Json DataToJson(const DataFile& file) {
  Json j;
  AlphabetsToJson(file.alphabets, j);
  j["a"] = file.data.a;
  j["b"] = file.data.b;
  j["x"] = file.data.x;
  j["y"] = file.data.y;
  j["q"] = InputDistributionToJson(file.q);
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace ditk
