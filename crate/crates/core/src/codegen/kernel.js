
var hasOwn = Object.prototype.hasOwnProperty;
var registry = {};
var registered = [];

function fail(message) {
  throw new Error("JSC: " + message);
}

function own(obj, key) {
  return obj != null && hasOwn.call(obj, key);
}

function keys(obj) {
  var out = [];
  for (var k in obj) {
    if (own(obj, k)) {
      out.push(k);
    }
  }
  return out;
}

function lookup(name) {
  if (!own(registry, name)) {
    fail("unknown class " + name);
  }
  return registry[name];
}

function checkSpec(name, spec) {
  if (typeof name !== "string" || !spec || typeof spec !== "object") {
    fail("malformed definition for " + name);
  }
  if (spec.kind !== "class" && spec.kind !== "protocol") {
    fail("malformed definition for " + name + ": unknown kind " + spec.kind);
  }
  if (!(spec.supers instanceof Array)) {
    fail("malformed definition for " + name + ": supers must be an array");
  }
  if (spec.kind === "class") {
    if (!(spec.slots instanceof Array) || typeof spec.methods !== "object" || typeof spec.statics !== "object") {
      fail("malformed definition for " + name);
    }
    if (spec.ctor !== null && spec.ctor !== undefined && typeof spec.ctor !== "function") {
      fail("malformed definition for " + name + ": ctor must be a function or null");
    }
  } else if (!spec.required || typeof spec.required !== "object") {
    fail("malformed definition for " + name + ": protocols need a required map");
  }
}

function protocolClosure(meta, out, visiting) {
  if (own(out, meta.name)) {
    return;
  }
  if (own(visiting, meta.name)) {
    fail("inheritance cycle at " + meta.name);
  }
  visiting[meta.name] = true;
  for (var i = 0; i < meta.spec.supers.length; i++) {
    var sup = lookup(meta.spec.supers[i]);
    if (sup.spec.kind !== "protocol") {
      fail("protocol " + meta.name + " may only extend protocols, not " + sup.name);
    }
    protocolClosure(sup, out, visiting);
  }
  delete visiting[meta.name];
  out[meta.name] = meta;
}

function put(table, name, value) {
  if (!own(table.map, name)) {
    table.names.push(name);
  }
  table.map[name] = value;
}

function table() {
  return { names: [], map: {} };
}

// Own members win over supers; later supers win over earlier ones.
function effective(meta, visiting) {
  if (own(visiting, meta.name)) {
    fail("inheritance cycle at " + meta.name);
  }
  visiting[meta.name] = true;
  var spec = meta.spec;
  var methods = table();
  var slots = table();
  var protocols = {};
  var i, j, name;
  for (i = 0; i < spec.supers.length; i++) {
    var sup = lookup(spec.supers[i]);
    if (sup.spec.kind === "protocol") {
      protocolClosure(sup, protocols, {});
      continue;
    }
    var eff = effective(sup, visiting);
    for (j = 0; j < eff.methods.names.length; j++) {
      name = eff.methods.names[j];
      put(methods, name, eff.methods.map[name]);
    }
    for (j = 0; j < eff.slots.names.length; j++) {
      name = eff.slots.names[j];
      put(slots, name, eff.slots.map[name]);
    }
    for (name in eff.protocols) {
      if (own(eff.protocols, name)) {
        protocols[name] = eff.protocols[name];
      }
    }
  }
  var ownMethods = keys(spec.methods);
  for (i = 0; i < ownMethods.length; i++) {
    put(methods, ownMethods[i], spec.methods[ownMethods[i]]);
  }
  for (i = 0; i < spec.slots.length; i++) {
    put(slots, spec.slots[i].name, spec.slots[i]);
  }
  delete visiting[meta.name];
  return { methods: methods, slots: slots, protocols: protocols };
}

function getterFor(key) {
  return function () {
    return this[key];
  };
}

function setterFor(key) {
  return function (value) {
    this[key] = value;
  };
}

function stub() {}

function Meta(name, spec) {
  this.name = name;
  this.spec = spec;
  this.prototypeObject = {};
  this.initialized = false;
  this.initializing = false;
  this.effectiveSlots = [];
  this.installedStatics = [];
}

Meta.prototype.classInit = function () {
  if (this.initializing) {
    fail("inheritance cycle at " + this.name);
  }
  this.initializing = true;
  try {
    this.rebuild();
  } finally {
    this.initializing = false;
  }
  this.initialized = true;
};

Meta.prototype.rebuild = function () {
  var spec = this.spec;
  var i, name;
  for (i = 0; i < spec.supers.length; i++) {
    var sup = lookup(spec.supers[i]);
    if (!sup.initialized) {
      sup.classInit();
    }
  }
  if (spec.kind === "protocol") {
    protocolClosure(this, {}, {});
    return;
  }
  var eff = effective(this, {});
  var surface = {};
  for (i = 0; i < eff.methods.names.length; i++) {
    surface[eff.methods.names[i]] = eff.methods.map[eff.methods.names[i]];
  }
  var slots = [];
  for (i = 0; i < eff.slots.names.length; i++) {
    var slot = eff.slots.map[eff.slots.names[i]];
    var key = "__slot_" + slot.name;
    surface[slot.getter] = getterFor(key);
    surface[slot.setter] = setterFor(key);
    slots.push(slot);
  }
  var stubs = {};
  for (var p in eff.protocols) {
    if (!own(eff.protocols, p)) {
      continue;
    }
    var required = eff.protocols[p].spec.required;
    for (name in required) {
      if (!own(required, name) || own(surface, name)) {
        continue;
      }
      if (required[name]) {
        fail("protocol " + p + " requires " + name + " in " + this.name);
      }
      stubs[name] = true;
    }
  }
  for (name in stubs) {
    if (own(stubs, name) && !own(surface, name)) {
      surface[name] = stub;
    }
  }

  var proto = this.prototypeObject;
  var old = keys(proto);
  for (i = 0; i < old.length; i++) {
    delete proto[old[i]];
  }
  for (name in surface) {
    if (own(surface, name)) {
      proto[name] = surface[name];
    }
  }
  this.effectiveSlots = slots;

  for (i = 0; i < this.installedStatics.length; i++) {
    delete this[this.installedStatics[i]];
  }
  this.installedStatics = keys(spec.statics);
  for (i = 0; i < this.installedStatics.length; i++) {
    this[this.installedStatics[i]] = spec.statics[this.installedStatics[i]];
  }
};

Meta.prototype.create = function () {
  if (!this.initialized) {
    this.classInit();
  }
  if (this.spec.kind !== "class") {
    fail("cannot instantiate protocol " + this.name);
  }
  var instance = Object.create(this.prototypeObject);
  for (var i = 0; i < this.effectiveSlots.length; i++) {
    var slot = this.effectiveSlots[i];
    if (slot.hasDefault) {
      instance[slot.setter](slot["default"].call(instance));
    }
  }
  if (this.spec.ctor) {
    this.spec.ctor.apply(instance, arguments);
  }
  return instance;
};

Meta.prototype.init = function (instance) {
  if (this.spec.ctor) {
    this.spec.ctor.apply(instance, Array.prototype.slice.call(arguments, 1));
  }
  return instance;
};

Meta.prototype.respondsTo = function (methodName) {
  if (!this.initialized) {
    this.classInit();
  }
  return own(this.prototypeObject, methodName) && typeof this.prototypeObject[methodName] === "function";
};

function Class(name) {
  var meta = lookup(name);
  if (!meta.initialized) {
    meta.classInit();
  }
  return meta;
}

Class.define = function (name, spec) {
  checkSpec(name, spec);
  if (own(registry, name)) {
    registry[name].spec = spec;
    registry[name].initialized = false;
    return;
  }
  registry[name] = new Meta(name, spec);
  registered.push(name);
};

Class.initAll = function () {
  for (var i = 0; i < registered.length; i++) {
    var meta = registry[registered[i]];
    if (!meta.initialized) {
      meta.classInit();
    }
  }
};

