// Copyright 2026 The dzne Authors
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

#ifndef DZNE_PAULI_H
#define DZNE_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>

namespace dzne {

/// Signed Pauli observable over n qubits. Character k of `letters` acts on qubit k.
class PauliString {
   public:
    PauliString() = default;
    /// `letters` over {I,X,Y,Z}; sign must be +1 or -1.
    PauliString(std::string letters, int sign = 1);

    /// Parses forms like "ZZI", "+XY", "-ZIZ".
    static PauliString parse(std::string_view text);
    static PauliString identity(size_t n);
    /// Z on every qubit.
    static PauliString z_all(size_t n);
    /// Z on one qubit, identity elsewhere.
    static PauliString z_at(size_t n, size_t qubit);

    size_t size() const {
        return letters_.size();
    }
    const std::string &letters() const {
        return letters_;
    }
    int sign() const {
        return sign_;
    }
    char operator[](size_t k) const {
        return letters_[k];
    }

    /// Bit k set where letter k is not I.
    uint64_t support_mask() const;
    /// Bit k set where letter k is X or Y.
    uint64_t x_mask() const;
    /// Bit k set where letter k is Z or Y.
    uint64_t z_mask() const;
    /// True when every letter is I or Z.
    bool is_diagonal() const;

    std::string str() const;
    bool operator==(const PauliString &other) const = default;

   private:
    std::string letters_;
    int sign_ = 1;
};

}  // namespace dzne

#endif  // DZNE_PAULI_H
