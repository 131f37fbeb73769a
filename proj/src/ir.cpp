//===- ir.cpp - Core SSA IR data structures -------------------------------===//
//
// Part of the omp2hls project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "omp2hls/ir.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace omp2hls {

//===----------------------------------------------------------------------===//
// Type
//===----------------------------------------------------------------------===//

Type Type::memref(std::vector<int64_t> shape, Type element,
                  unsigned memorySpace) {
  assert(element.kind() == TypeKind::Integer ||
         element.kind() == TypeKind::Float ||
         element.kind() == TypeKind::Index);
  Type t;
  t.kind_ = TypeKind::MemRef;
  t.shape_ = std::move(shape);
  t.elemKind_ = element.kind();
  t.elemWidth_ = element.width();
  t.space_ = memorySpace;
  return t;
}

Type Type::elementType() const {
  assert(kind_ == TypeKind::MemRef);
  Type t;
  t.kind_ = elemKind_;
  t.width_ = elemWidth_;
  return t;
}

bool Type::hasStaticShape() const {
  return std::none_of(shape_.begin(), shape_.end(),
                      [](int64_t d) { return d == kDynamic; });
}

int64_t Type::staticElementCount() const {
  assert(hasStaticShape());
  int64_t n = 1;
  for (int64_t d : shape_)
    n *= d;
  return n;
}

unsigned Type::dynamicDimCount() const {
  return static_cast<unsigned>(
      std::count(shape_.begin(), shape_.end(), kDynamic));
}

bool Type::operator==(const Type &o) const {
  if (kind_ != o.kind_)
    return false;
  switch (kind_) {
  case TypeKind::Integer:
  case TypeKind::Float:
    return width_ == o.width_;
  case TypeKind::Index:
  case TypeKind::KernelHandle:
  case TypeKind::AxiProtocol:
    return true;
  case TypeKind::MemRef:
    return shape_ == o.shape_ && elemKind_ == o.elemKind_ &&
           elemWidth_ == o.elemWidth_ && space_ == o.space_;
  }
  return false;
}

std::string Type::str() const {
  switch (kind_) {
  case TypeKind::Integer:
    return "i" + std::to_string(width_);
  case TypeKind::Float:
    return "f" + std::to_string(width_);
  case TypeKind::Index:
    return "index";
  case TypeKind::KernelHandle:
    return "!device.kernelhandle";
  case TypeKind::AxiProtocol:
    return "!hls.axi_protocol";
  case TypeKind::MemRef: {
    std::string s = "memref<";
    for (int64_t d : shape_)
      s += (d == kDynamic ? std::string("?") : std::to_string(d)) + "x";
    s += elementType().str();
    if (space_ != 0)
      s += ", " + std::to_string(space_) + " : i32";
    s += ">";
    return s;
  }
  }
  return "<invalid>";
}

//===----------------------------------------------------------------------===//
// Attribute
//===----------------------------------------------------------------------===//

bool Attribute::operator==(const Attribute &o) const {
  if (kind_ != o.kind_)
    return false;
  switch (kind_) {
  case Kind::Unit:
    return true;
  case Kind::Int:
    return int_ == o.int_ && type_ == o.type_;
  case Kind::Float:
    return float_ == o.float_ && type_ == o.type_;
  case Kind::String:
  case Kind::Symbol:
    return str_ == o.str_;
  case Kind::Array:
    return elems_ == o.elems_;
  }
  return false;
}

static std::string formatFloat(double value, const Type &type) {
  char buf[64];
  std::to_chars_result res{};
  if (type == Type::f32()) {
    res = std::to_chars(buf, buf + sizeof(buf), static_cast<float>(value));
  } else {
    res = std::to_chars(buf, buf + sizeof(buf), value);
  }
  std::string s(buf, res.ptr);
  // Keep float attrs visually distinct from ints when the value is integral.
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string Attribute::str() const {
  switch (kind_) {
  case Kind::Unit:
    return "unit";
  case Kind::Int:
    return std::to_string(int_) + " : " + type_.str();
  case Kind::Float:
    return formatFloat(float_, type_) + " : " + type_.str();
  case Kind::String: {
    std::string s = "\"";
    for (char c : str_) {
      if (c == '"' || c == '\\')
        s += '\\';
      s += c;
    }
    s += "\"";
    return s;
  }
  case Kind::Symbol:
    return "@" + str_;
  case Kind::Array: {
    std::string s = "[";
    for (size_t i = 0; i < elems_.size(); ++i) {
      if (i)
        s += ", ";
      s += elems_[i].str();
    }
    s += "]";
    return s;
  }
  }
  return "<invalid>";
}

//===----------------------------------------------------------------------===//
// Region / Block
//===----------------------------------------------------------------------===//

Region::Region() : block_(std::make_unique<Block>()) {
  block_->setParent(this);
}

Region::Region(Operation *owner) : Region() { owner_ = owner; }

void Region::setOwner(Operation *op) { owner_ = op; }

std::unique_ptr<Block> Region::takeBlock() {
  auto b = std::move(block_);
  b->setParent(nullptr);
  block_ = std::make_unique<Block>();
  block_->setParent(this);
  return b;
}

void Region::setBlock(std::unique_ptr<Block> b) {
  block_ = std::move(b);
  block_->setParent(this);
}

BlockArg *Block::addArg(Type t) {
  args_.push_back(
      std::make_unique<BlockArg>(std::move(t), this, args_.size()));
  return args_.back().get();
}

void Block::setArgTypes(const std::vector<Type> &types) {
  assert(types.size() == args_.size());
  for (size_t i = 0; i < types.size(); ++i)
    args_[i]->setType(types[i]);
}

Operation *Block::append(std::unique_ptr<Operation> op) {
  op->setParent(this);
  ops_.push_back(std::move(op));
  return ops_.back().get();
}

Operation *Block::insert(size_t index, std::unique_ptr<Operation> op) {
  assert(index <= ops_.size());
  op->setParent(this);
  auto it = ops_.insert(ops_.begin() + static_cast<ptrdiff_t>(index),
                        std::move(op));
  return it->get();
}

std::unique_ptr<Operation> Block::take(Operation *op) {
  size_t i = indexOf(op);
  auto owned = std::move(ops_[i]);
  ops_.erase(ops_.begin() + static_cast<ptrdiff_t>(i));
  owned->setParent(nullptr);
  return owned;
}

void Block::erase(Operation *op) { take(op); }

size_t Block::indexOf(const Operation *op) const {
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].get() == op)
      return i;
  assert(false && "op not in block");
  return ops_.size();
}

//===----------------------------------------------------------------------===//
// Operation
//===----------------------------------------------------------------------===//

std::unique_ptr<Operation> Operation::create(std::string name,
                                             std::vector<Value *> operands,
                                             std::vector<Type> resultTypes,
                                             AttrMap attrs,
                                             size_t numRegions) {
  auto op = std::unique_ptr<Operation>(new Operation());
  op->name_ = std::move(name);
  op->operands_ = std::move(operands);
  op->attrs_ = std::move(attrs);
  for (size_t i = 0; i < resultTypes.size(); ++i)
    op->results_.push_back(std::make_unique<OpResult>(
        std::move(resultTypes[i]), op.get(), static_cast<unsigned>(i)));
  for (size_t i = 0; i < numRegions; ++i)
    op->addRegion();
  return op;
}

std::string Operation::dialect() const {
  auto pos = name_.find('.');
  return pos == std::string::npos ? name_ : name_.substr(0, pos);
}

const Attribute *Operation::attr(const std::string &name) const {
  auto it = attrs_.find(name);
  return it == attrs_.end() ? nullptr : &it->second;
}

int64_t Operation::intAttr(const std::string &name) const {
  const Attribute *a = attr(name);
  assert(a && a->kind() == Attribute::Kind::Int);
  return a->intValue();
}

const std::string &Operation::stringAttr(const std::string &name) const {
  const Attribute *a = attr(name);
  assert(a && (a->kind() == Attribute::Kind::String ||
               a->kind() == Attribute::Kind::Symbol));
  return a->stringValue();
}

Region *Operation::addRegion() {
  regions_.push_back(std::make_unique<Region>(this));
  return regions_.back().get();
}

Operation *Operation::parentOp() const {
  if (!parent_ || !parent_->parent())
    return nullptr;
  return parent_->parent()->owner();
}

static void walkBlock(Block &b, const std::function<void(Operation &)> &fn) {
  // Snapshot: callbacks may not structurally mutate the blocks they walk.
  for (auto &op : b.ops()) {
    fn(*op);
    for (size_t r = 0; r < op->numRegions(); ++r)
      walkBlock(op->region(r).block(), fn);
  }
}

void Operation::walk(const std::function<void(Operation &)> &fn) {
  fn(*this);
  for (auto &r : regions_)
    walkBlock(r->block(), fn);
}

void Operation::walk(const std::function<void(const Operation &)> &fn) const {
  const_cast<Operation *>(this)->walk(
      [&fn](Operation &op) { fn(static_cast<const Operation &>(op)); });
}

static std::unique_ptr<Block>
cloneBlock(const Block &src, std::unordered_map<const Value *, Value *> &map);

std::unique_ptr<Operation>
Operation::clone(std::unordered_map<const Value *, Value *> &mapping) const {
  std::vector<Value *> newOperands;
  newOperands.reserve(operands_.size());
  for (Value *v : operands_) {
    auto it = mapping.find(v);
    newOperands.push_back(it == mapping.end() ? v : it->second);
  }
  std::vector<Type> resultTypes;
  for (auto &r : results_)
    resultTypes.push_back(r->type());
  auto cloned =
      Operation::create(name_, std::move(newOperands), std::move(resultTypes),
                        attrs_, /*numRegions=*/0);
  for (size_t i = 0; i < results_.size(); ++i)
    mapping[results_[i].get()] = cloned->result(i);
  for (auto &r : regions_) {
    Region *nr = cloned->addRegion();
    nr->setBlock(cloneBlock(r->block(), mapping));
  }
  return cloned;
}

static std::unique_ptr<Block>
cloneBlock(const Block &src, std::unordered_map<const Value *, Value *> &map) {
  auto dst = std::make_unique<Block>();
  for (auto &arg : src.args()) {
    BlockArg *na = dst->addArg(arg->type());
    map[arg.get()] = na;
  }
  for (auto &op : src.ops())
    dst->append(op->clone(map));
  return dst;
}

//===----------------------------------------------------------------------===//
// Module
//===----------------------------------------------------------------------===//

Module::Module() : body_(std::make_unique<Region>()) {}

const Attribute *Module::attr(const std::string &name) const {
  auto it = attrs_.find(name);
  return it == attrs_.end() ? nullptr : &it->second;
}

Operation *Module::lookupFunction(const std::string &symName) const {
  for (auto &op : block().ops())
    if (op->name() == "func.func" && op->hasAttr("sym_name") &&
        op->stringAttr("sym_name") == symName)
      return op.get();
  return nullptr;
}

void Module::walk(const std::function<void(Operation &)> &fn) {
  walkBlock(block(), fn);
}

void Module::walk(const std::function<void(const Operation &)> &fn) const {
  const_cast<Module *>(this)->walk(
      [&fn](Operation &op) { fn(static_cast<const Operation &>(op)); });
}

Module Module::clone() const {
  Module m;
  m.attrs_ = attrs_;
  std::unordered_map<const Value *, Value *> map;
  m.body().setBlock(cloneBlock(block(), map));
  return m;
}

//===----------------------------------------------------------------------===//
// IR utilities
//===----------------------------------------------------------------------===//

void replaceAllUses(Value *from, Value *to, Block &scope) {
  walkBlock(scope, [&](Operation &op) {
    for (size_t i = 0; i < op.numOperands(); ++i)
      if (op.operand(i) == from)
        op.setOperand(i, to);
  });
}

bool hasUses(const Value *v, const Block &scope) {
  bool found = false;
  walkBlock(const_cast<Block &>(scope), [&](Operation &op) {
    for (Value *o : op.operands())
      if (o == v)
        found = true;
  });
  return found;
}

static bool isTriviallyDead(const Operation &op) {
  const std::string &n = op.name();
  return n.rfind("arith.", 0) == 0 || n == "omp.bounds_info" ||
         n == "omp.map_info" || n == "hls.m_axi";
}

void eraseTriviallyDeadOps(Block &scope) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Operation *> dead;
    walkBlock(scope, [&](Operation &op) {
      if (!isTriviallyDead(op) || op.numResults() == 0)
        return;
      for (auto &r : op.results())
        if (hasUses(r.get(), scope))
          return;
      dead.push_back(&op);
    });
    for (Operation *op : dead) {
      op->parent()->erase(op);
      changed = true;
    }
  }
}

namespace {
/// Assigns each value a definition ordinal; operand references compare
/// equal when their ordinals match.
struct Numbering {
  std::unordered_map<const Value *, size_t> ids;
  void number(const Block &b) {
    for (auto &a : b.args())
      ids.emplace(a.get(), ids.size());
    for (auto &op : b.ops()) {
      for (auto &r : op->results())
        ids.emplace(r.get(), ids.size());
      for (size_t i = 0; i < op->numRegions(); ++i)
        number(op->region(i).block());
    }
  }
};

bool blocksEqual(const Block &a, const Block &b, const Numbering &na,
                 const Numbering &nb) {
  if (a.numArgs() != b.numArgs() || a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.numArgs(); ++i)
    if (a.arg(i)->type() != b.arg(i)->type())
      return false;
  for (size_t i = 0; i < a.size(); ++i) {
    const Operation &x = *a.op(i);
    const Operation &y = *b.op(i);
    if (x.name() != y.name() || x.attrs() != y.attrs() ||
        x.numOperands() != y.numOperands() ||
        x.numResults() != y.numResults() || x.numRegions() != y.numRegions())
      return false;
    for (size_t j = 0; j < x.numOperands(); ++j) {
      auto ia = na.ids.find(x.operand(j));
      auto ib = nb.ids.find(y.operand(j));
      if (ia == na.ids.end() || ib == nb.ids.end() || ia->second != ib->second)
        return false;
      if (x.operand(j)->type() != y.operand(j)->type())
        return false;
    }
    for (size_t j = 0; j < x.numResults(); ++j)
      if (x.result(j)->type() != y.result(j)->type())
        return false;
    for (size_t j = 0; j < x.numRegions(); ++j)
      if (!blocksEqual(x.region(j).block(), y.region(j).block(), na, nb))
        return false;
  }
  return true;
}
} // namespace

bool structurallyEqual(const Module &a, const Module &b) {
  if (a.attrs() != b.attrs())
    return false;
  Numbering na, nb;
  na.number(a.block());
  nb.number(b.block());
  return blocksEqual(a.block(), b.block(), na, nb);
}

std::string opPath(const Operation &op) {
  std::vector<std::string> segs;
  const Operation *cur = &op;
  while (cur) {
    std::string seg = cur->name();
    if (cur->name() == "func.func" && cur->hasAttr("sym_name"))
      seg += "@" + cur->stringAttr("sym_name");
    else if (cur->parent())
      seg += "#" + std::to_string(cur->parent()->indexOf(cur));
    segs.push_back(seg);
    cur = cur->parentOp();
  }
  std::string path;
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    if (!path.empty())
      path += "/";
    path += *it;
  }
  return path;
}

} // namespace omp2hls
