#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sq/errors.hpp"

namespace sq {

/// Elements are 1..n throughout the library.
using Element = int;
using RawTable = std::vector<std::vector<int>>;

/// n x n operation table, row = left operand, column = right operand.
class OpTable {
public:
    OpTable() = default;
    explicit OpTable(int n);
    explicit OpTable(const RawTable& rows);

    int order() const { return n_; }
    Element at(Element x, Element y) const { return cells_[static_cast<std::size_t>((x - 1) * n_ + (y - 1))]; }
    void set(Element x, Element y, Element value) { cells_[static_cast<std::size_t>((x - 1) * n_ + (y - 1))] = value; }
    RawTable rows() const;

    const std::vector<int>& cells() const { return cells_; }

    friend bool operator==(const OpTable&, const OpTable&) = default;
    friend auto operator<=>(const OpTable&, const OpTable&) = default;

private:
    int n_ = 0;
    std::vector<int> cells_;
};

/// Permutation of 1..n; `(*this)(i)` is the image of i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);
    /// Parses cycle notation such as "(132)" or "(12)(34)"; "()" or "id" is the identity.
    static Permutation from_cycles(const std::string& text, int n);

    int size() const { return static_cast<int>(images_.size()); }
    Element operator()(Element i) const { return images_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    /// (a * b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    bool is_identity() const;
    std::string to_cycles() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

struct SemiquandleTable {
    OpTable up;
    OpTable dn;

    int order() const { return up.order(); }
    friend bool operator==(const SemiquandleTable&, const SemiquandleTable&) = default;
    friend auto operator<=>(const SemiquandleTable&, const SemiquandleTable&) = default;
};

struct SingularExtension {
    OpTable hup;
    OpTable hdn;

    friend bool operator==(const SingularExtension&, const SingularExtension&) = default;
    friend auto operator<=>(const SingularExtension&, const SingularExtension&) = default;
};

struct VirtualExtension {
    Permutation v;

    friend bool operator==(const VirtualExtension&, const VirtualExtension&) = default;
};

struct StructureBundle {
    SemiquandleTable table;
    std::optional<SingularExtension> singular;
    std::optional<VirtualExtension> virt;

    int order() const { return table.order(); }
};

enum class Axiom {
    ColumnUp,     // (0) for x -> x^y
    ColumnDn,     // (0) for x -> x_y
    I,
    II1,
    II2,
    III1,
    III2,
    III3,
    HI1,
    HI2,
    HII1,
    HII2,
    HII3,
    VirtualUp,
    VirtualDn,
    VirtualHup,
    VirtualHdn,
};

std::string axiom_name(Axiom a);

struct Violation {
    Axiom axiom;
    std::vector<int> witness;

    friend bool operator==(const Violation&, const Violation&) = default;
    friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Result of an axiom check. Structural problems (bad shape, out-of-range
/// entries, non-bijective v) are kept apart from axiom violations.
struct AxiomReport {
    std::vector<std::string> structural;
    std::vector<Violation> violations;

    bool ok() const { return structural.empty() && violations.empty(); }
    std::string to_text() const;
};

AxiomReport check_semiquandle(const RawTable& up, const RawTable& dn);
AxiomReport check_semiquandle(const SemiquandleTable& table);
AxiomReport check_singular(const StructureBundle& bundle);
AxiomReport check_virtual(const StructureBundle& bundle);
/// All checks that apply to the extensions present in the bundle.
AxiomReport check_bundle(const StructureBundle& bundle);

enum class OpKind { Up, Dn, HUp, HDn, V, VInv, UpInv, DnInv };

/// Table lookup, or inverse lookup for the inverse kinds. `y` is ignored
/// for the unary kinds. Throws MissingExtension when the bundle lacks the
/// extension that provides `op`.
Element eval(const StructureBundle& bundle, OpKind op, Element x, Element y = 0);

/// Bitmask over elements (bit i-1 for element i); orders up to 32.
using ElementSet = std::uint32_t;

ElementSet to_mask(const std::set<Element>& elements);
std::set<Element> from_mask(ElementSet mask);

/// Smallest superset of `seed` closed under every forward operation the
/// bundle carries.
std::set<Element> subclosure(const StructureBundle& bundle, const std::set<Element>& seed);
ElementSet subclosure(const StructureBundle& bundle, ElementSet seed);

/// Permutations preserving every operation of the bundle, in lexicographic
/// order of their image vectors.
std::vector<Permutation> automorphisms(const StructureBundle& bundle);

SemiquandleTable make_constant_action(int n, const Permutation& sigma);
SemiquandleTable make_trivial(int n);
SingularExtension make_operator_singular(const SemiquandleTable& table);
SingularExtension make_flat_singular(const SemiquandleTable& table);
/// hup[x][y] = hdn[x][y] = x. Valid only for some tables; run check_singular.
SingularExtension make_trivial_singular(int n);

/// Relabel every table entry and index through `phi`.
SemiquandleTable relabel(const SemiquandleTable& table, const Permutation& phi);
SingularExtension relabel(const SingularExtension& ext, const Permutation& phi);

/// Every permutation of 1..n in lexicographic order.
std::vector<Permutation> all_permutations(int n);

} // namespace sq
