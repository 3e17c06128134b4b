// Copyright 2026 The Bandage Authors
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

#ifndef BANDAGE_UNION_FIND_H
#define BANDAGE_UNION_FIND_H

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace bandage {

/// Disjoint sets with path halving and union by size.
class UnionFind {
   public:
    explicit UnionFind(size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), size_t{0});
    }

    size_t find(size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    bool same(size_t a, size_t b) {
        return find(a) == find(b);
    }

   private:
    std::vector<size_t> parent_;
    std::vector<size_t> size_;
};

}  // namespace bandage

#endif
