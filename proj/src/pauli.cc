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

#include "dzne/pauli.h"

#include <stdexcept>

namespace dzne {

PauliString::PauliString(std::string letters, int sign) : letters_(std::move(letters)), sign_(sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("Pauli sign must be +1 or -1");
    }
    if (letters_.size() > 64) {
        throw std::invalid_argument("Pauli strings are limited to 64 qubits");
    }
    for (char c : letters_) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("bad Pauli letter '" + std::string(1, c) + "'");
        }
    }
}

PauliString PauliString::parse(std::string_view text) {
    int sign = 1;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        sign = text[0] == '-' ? -1 : 1;
        text.remove_prefix(1);
    }
    return PauliString(std::string(text), sign);
}

PauliString PauliString::identity(size_t n) {
    return PauliString(std::string(n, 'I'));
}

PauliString PauliString::z_all(size_t n) {
    return PauliString(std::string(n, 'Z'));
}

PauliString PauliString::z_at(size_t n, size_t qubit) {
    std::string s(n, 'I');
    s.at(qubit) = 'Z';
    return PauliString(std::move(s));
}

uint64_t PauliString::support_mask() const {
    uint64_t m = 0;
    for (size_t k = 0; k < letters_.size(); k++) {
        if (letters_[k] != 'I') {
            m |= uint64_t{1} << k;
        }
    }
    return m;
}

uint64_t PauliString::x_mask() const {
    uint64_t m = 0;
    for (size_t k = 0; k < letters_.size(); k++) {
        if (letters_[k] == 'X' || letters_[k] == 'Y') {
            m |= uint64_t{1} << k;
        }
    }
    return m;
}

uint64_t PauliString::z_mask() const {
    uint64_t m = 0;
    for (size_t k = 0; k < letters_.size(); k++) {
        if (letters_[k] == 'Z' || letters_[k] == 'Y') {
            m |= uint64_t{1} << k;
        }
    }
    return m;
}

bool PauliString::is_diagonal() const {
    return x_mask() == 0;
}

std::string PauliString::str() const {
    return (sign_ < 0 ? "-" : "+") + letters_;
}

}  // namespace dzne
