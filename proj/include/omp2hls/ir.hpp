//===- ir.hpp - Core SSA IR data structures --------------------*- C++ -*-===//
//
// Part of the omp2hls project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Generic SSA IR substrate: modules, single-block regions, operations with
// operands/results/attributes, and semantic types. Every pass in the
// pipeline rewrites this representation. Ops are stored generically (no
// per-op native classes); dialect contracts live in verifier callbacks
// registered per op name.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace omp2hls {

class Block;
class Operation;
class Region;

//===----------------------------------------------------------------------===//
// Type
//===----------------------------------------------------------------------===//

enum class TypeKind {
  Integer,      // iN
  Float,        // fN
  Index,        // index
  MemRef,       // memref<shape x elem, space>
  KernelHandle, // !device.kernelhandle
  AxiProtocol,  // !hls.axi_protocol
};

/// A semantic value type. Small immutable value class; memref element types
/// are restricted to scalars (integer/float/index).
class Type {
public:
  static constexpr int64_t kDynamic = -1;

  /// Defaults to `index`; containers need a default constructor.
  Type() : kind_(TypeKind::Index) {}

  static Type integer(unsigned width) {
    Type t;
    t.kind_ = TypeKind::Integer;
    t.width_ = width;
    return t;
  }
  static Type i1() { return integer(1); }
  static Type i32() { return integer(32); }
  static Type i64() { return integer(64); }
  static Type f32() {
    Type t;
    t.kind_ = TypeKind::Float;
    t.width_ = 32;
    return t;
  }
  static Type f64() {
    Type t;
    t.kind_ = TypeKind::Float;
    t.width_ = 64;
    return t;
  }
  static Type index() { return Type(); }
  static Type memref(std::vector<int64_t> shape, Type element,
                     unsigned memorySpace = 0);
  static Type kernelHandle() {
    Type t;
    t.kind_ = TypeKind::KernelHandle;
    return t;
  }
  static Type axiProtocol() {
    Type t;
    t.kind_ = TypeKind::AxiProtocol;
    return t;
  }

  TypeKind kind() const { return kind_; }
  bool isInteger() const { return kind_ == TypeKind::Integer; }
  bool isFloat() const { return kind_ == TypeKind::Float; }
  bool isIndex() const { return kind_ == TypeKind::Index; }
  bool isMemRef() const { return kind_ == TypeKind::MemRef; }
  bool isIntOrIndex() const { return isInteger() || isIndex(); }

  /// Bit width; valid for integer and float types.
  unsigned width() const { return width_; }

  /// MemRef accessors.
  const std::vector<int64_t> &shape() const { return shape_; }
  Type elementType() const;
  unsigned memorySpace() const { return space_; }
  bool hasStaticShape() const;
  /// Product of static dims; asserts the shape is fully static.
  int64_t staticElementCount() const;
  unsigned dynamicDimCount() const;
  int64_t rank() const { return static_cast<int64_t>(shape_.size()); }

  bool operator==(const Type &o) const;
  bool operator!=(const Type &o) const { return !(*this == o); }

  /// Textual form, e.g. "memref<100xf32, 1 : i32>".
  std::string str() const;

private:
  TypeKind kind_;
  unsigned width_ = 0;
  unsigned space_ = 0;
  TypeKind elemKind_ = TypeKind::Index;
  unsigned elemWidth_ = 0;
  std::vector<int64_t> shape_;
};

//===----------------------------------------------------------------------===//
// Attribute
//===----------------------------------------------------------------------===//

/// Attribute values: typed integers, typed floats, strings, symbol
/// references, arrays, and the unit attribute (bare flag).
class Attribute {
public:
  enum class Kind { Int, Float, String, Symbol, Array, Unit };

  Attribute() : kind_(Kind::Unit) {}

  static Attribute unit() { return Attribute(); }
  static Attribute integer(int64_t value, Type type = Type::i64()) {
    Attribute a;
    a.kind_ = Kind::Int;
    a.int_ = value;
    a.type_ = type;
    return a;
  }
  static Attribute floating(double value, Type type = Type::f64()) {
    Attribute a;
    a.kind_ = Kind::Float;
    a.float_ = value;
    a.type_ = type;
    return a;
  }
  static Attribute string(std::string value) {
    Attribute a;
    a.kind_ = Kind::String;
    a.str_ = std::move(value);
    return a;
  }
  /// Symbol reference, stored without the leading '@'.
  static Attribute symbol(std::string name) {
    Attribute a;
    a.kind_ = Kind::Symbol;
    a.str_ = std::move(name);
    return a;
  }
  static Attribute array(std::vector<Attribute> elems) {
    Attribute a;
    a.kind_ = Kind::Array;
    a.elems_ = std::move(elems);
    return a;
  }

  Kind kind() const { return kind_; }
  bool isUnit() const { return kind_ == Kind::Unit; }
  int64_t intValue() const {
    assert(kind_ == Kind::Int);
    return int_;
  }
  double floatValue() const {
    assert(kind_ == Kind::Float);
    return float_;
  }
  const std::string &stringValue() const {
    assert(kind_ == Kind::String || kind_ == Kind::Symbol);
    return str_;
  }
  const std::vector<Attribute> &arrayValue() const {
    assert(kind_ == Kind::Array);
    return elems_;
  }
  /// Type of an int/float attribute (e.g. i32 in "1 : i32").
  const Type &type() const { return type_; }

  bool operator==(const Attribute &o) const;
  bool operator!=(const Attribute &o) const { return !(*this == o); }

  std::string str() const;

private:
  Kind kind_;
  int64_t int_ = 0;
  double float_ = 0.0;
  std::string str_;
  std::vector<Attribute> elems_;
  Type type_;
};

/// Sorted by name so iteration (and printing) is deterministic.
using AttrMap = std::map<std::string, Attribute>;

//===----------------------------------------------------------------------===//
// Value
//===----------------------------------------------------------------------===//

/// An SSA value: either an operation result or a block argument.
class Value {
public:
  virtual ~Value() = default;
  Value(const Value &) = delete;
  Value &operator=(const Value &) = delete;

  const Type &type() const { return type_; }
  void setType(Type t) { type_ = std::move(t); }

  /// Defining operation, or null for block arguments.
  virtual Operation *definingOp() const { return nullptr; }
  virtual bool isBlockArg() const { return false; }

protected:
  explicit Value(Type t) : type_(std::move(t)) {}

private:
  Type type_;
};

class OpResult final : public Value {
public:
  OpResult(Type t, Operation *owner, unsigned index)
      : Value(std::move(t)), owner_(owner), index_(index) {}
  Operation *definingOp() const override { return owner_; }
  unsigned index() const { return index_; }

private:
  Operation *owner_;
  unsigned index_;
};

class BlockArg final : public Value {
public:
  BlockArg(Type t, Block *owner, unsigned index)
      : Value(std::move(t)), owner_(owner), index_(index) {}
  bool isBlockArg() const override { return true; }
  Block *owner() const { return owner_; }
  unsigned index() const { return index_; }

private:
  Block *owner_;
  unsigned index_;
};

//===----------------------------------------------------------------------===//
// Region / Block
//===----------------------------------------------------------------------===//

/// A region holds exactly one block (structured control flow only; no
/// multi-block CFGs in this IR).
class Region {
public:
  Region();
  explicit Region(Operation *owner);

  Block &block() { return *block_; }
  const Block &block() const { return *block_; }
  Operation *owner() const { return owner_; }
  void setOwner(Operation *op);

  /// Replaces the held block wholesale (used when moving bodies between ops).
  std::unique_ptr<Block> takeBlock();
  void setBlock(std::unique_ptr<Block> b);

private:
  Operation *owner_ = nullptr;
  std::unique_ptr<Block> block_;
};

class Block {
public:
  Block() = default;

  BlockArg *addArg(Type t);
  const std::vector<std::unique_ptr<BlockArg>> &args() const { return args_; }
  BlockArg *arg(size_t i) const { return args_[i].get(); }
  size_t numArgs() const { return args_.size(); }
  void setArgTypes(const std::vector<Type> &types);

  Operation *append(std::unique_ptr<Operation> op);
  Operation *insert(size_t index, std::unique_ptr<Operation> op);
  /// Detaches `op` from this block and returns ownership.
  std::unique_ptr<Operation> take(Operation *op);
  void erase(Operation *op);
  size_t indexOf(const Operation *op) const;

  const std::vector<std::unique_ptr<Operation>> &ops() const { return ops_; }
  size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  Operation *op(size_t i) const { return ops_[i].get(); }
  Operation *back() const { return ops_.empty() ? nullptr : ops_.back().get(); }

  Region *parent() const { return parent_; }
  void setParent(Region *r) { parent_ = r; }

private:
  std::vector<std::unique_ptr<BlockArg>> args_;
  std::vector<std::unique_ptr<Operation>> ops_;
  Region *parent_ = nullptr;
};

//===----------------------------------------------------------------------===//
// Operation
//===----------------------------------------------------------------------===//

/// A generic operation: "dialect.op" name, SSA operands, typed results, an
/// attribute dictionary, and an ordered list of regions.
class Operation {
public:
  static std::unique_ptr<Operation> create(std::string name,
                                           std::vector<Value *> operands,
                                           std::vector<Type> resultTypes,
                                           AttrMap attrs = {},
                                           size_t numRegions = 0);

  const std::string &name() const { return name_; }
  /// Dialect prefix, e.g. "device" for "device.alloc".
  std::string dialect() const;

  const std::vector<Value *> &operands() const { return operands_; }
  Value *operand(size_t i) const { return operands_[i]; }
  size_t numOperands() const { return operands_.size(); }
  void setOperand(size_t i, Value *v) { operands_[i] = v; }
  void setOperands(std::vector<Value *> ops) { operands_ = std::move(ops); }

  OpResult *result(size_t i = 0) const { return results_[i].get(); }
  size_t numResults() const { return results_.size(); }
  const std::vector<std::unique_ptr<OpResult>> &results() const {
    return results_;
  }

  const AttrMap &attrs() const { return attrs_; }
  bool hasAttr(const std::string &name) const { return attrs_.count(name); }
  const Attribute *attr(const std::string &name) const;
  void setAttr(const std::string &name, Attribute a) {
    attrs_[name] = std::move(a);
  }
  void removeAttr(const std::string &name) { attrs_.erase(name); }
  /// Convenience accessors that assert presence and kind.
  int64_t intAttr(const std::string &name) const;
  const std::string &stringAttr(const std::string &name) const;

  Region &region(size_t i = 0) { return *regions_[i]; }
  const Region &region(size_t i = 0) const { return *regions_[i]; }
  size_t numRegions() const { return regions_.size(); }
  Region *addRegion();

  Block *parent() const { return parent_; }
  void setParent(Block *b) { parent_ = b; }
  /// Operation owning the block this op lives in, or null at module level.
  Operation *parentOp() const;

  /// Walks this op and all nested ops pre-order.
  void walk(const std::function<void(Operation &)> &fn);
  void walk(const std::function<void(const Operation &)> &fn) const;

  /// Deep copy. `mapping` translates operand references: values defined
  /// inside the cloned subtree are remapped automatically; outside values
  /// are looked up in `mapping` and left as-is when absent.
  std::unique_ptr<Operation>
  clone(std::unordered_map<const Value *, Value *> &mapping) const;

private:
  Operation() = default;

  std::string name_;
  std::vector<Value *> operands_;
  std::vector<std::unique_ptr<OpResult>> results_;
  AttrMap attrs_;
  std::vector<std::unique_ptr<Region>> regions_;
  Block *parent_ = nullptr;
};

//===----------------------------------------------------------------------===//
// Module
//===----------------------------------------------------------------------===//

/// Top-level IR unit: an attribute dictionary plus one single-block body
/// region. Move-only; use clone() for deep copies.
class Module {
public:
  Module();
  Module(Module &&) = default;
  Module &operator=(Module &&) = default;
  Module(const Module &) = delete;
  Module &operator=(const Module &) = delete;

  const AttrMap &attrs() const { return attrs_; }
  const Attribute *attr(const std::string &name) const;
  void setAttr(const std::string &name, Attribute a) {
    attrs_[name] = std::move(a);
  }

  Region &body() { return *body_; }
  const Region &body() const { return *body_; }
  Block &block() { return body_->block(); }
  const Block &block() const { return body_->block(); }

  /// Finds a func.func with the given symbol name, or null.
  Operation *lookupFunction(const std::string &symName) const;

  void walk(const std::function<void(Operation &)> &fn);
  void walk(const std::function<void(const Operation &)> &fn) const;

  Module clone() const;

private:
  AttrMap attrs_;
  std::unique_ptr<Region> body_;
};

//===----------------------------------------------------------------------===//
// IR utilities
//===----------------------------------------------------------------------===//

/// Replaces every use of `from` with `to` underneath `scope` (all operands
/// of all nested ops).
void replaceAllUses(Value *from, Value *to, Block &scope);

/// True if any op under `scope` uses `v`.
bool hasUses(const Value *v, const Block &scope);

/// Erases ops with no side effects whose results are all unused, iterating
/// to a fixed point. Side-effect-free here means: arith.*, omp.bounds_info,
/// omp.map_info, hls.m_axi.
void eraseTriviallyDeadOps(Block &scope);

/// Structural equality: same op names, attribute dictionaries, types, and
/// operand reference structure (by definition ordinal), recursively.
bool structurallyEqual(const Module &a, const Module &b);

/// Builds a stable "path" string for diagnostics, e.g.
/// "func.func@main/scf.for#3/memref.load#2".
std::string opPath(const Operation &op);

/// Thrown by passes on diagnosable input problems (exit code 2 territory).
class PassError : public std::runtime_error {
public:
  explicit PassError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace omp2hls
