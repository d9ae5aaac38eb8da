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

#ifndef DITK_PARALLEL_H_
#define DITK_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace ditk {

// Worker count: DI_TOOLKIT_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
int ThreadCount();

// Calls body(i) for i in [0, count) on up to ThreadCount() threads. The
// first exception thrown by any call is rethrown after all workers stop.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ditk

#endif  // DITK_PARALLEL_H_
