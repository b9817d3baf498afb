# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled term core. Same API and semantics as ``linpbt._pycore``."""

BACKEND = "cython"

cdef long _next_id = 1
cdef dict _keys = {}


cpdef object functor_key(str name, Py_ssize_t arity):
    k = (name, arity)
    found = _keys.get(k)
    if found is None:
        _keys[k] = k
        return k
    return found


cdef class Var:
    cdef public object ref
    cdef public str name
    cdef public long id

    def __init__(self, name="_"):
        global _next_id
        self.ref = None
        self.name = name
        self.id = _next_id
        _next_id += 1

    def __repr__(self):
        return f"{self.name}_{self.id}"


cdef class Struct:
    cdef public str name
    cdef public tuple args
    cdef public object key

    def __init__(self, name, args=(), key=None):
        self.name = name
        self.args = tuple(args)
        self.key = key if key is not None else functor_key(name, len(self.args))

    def __eq__(self, other):
        if type(other) is not Struct:
            return False
        return self.key is (<Struct>other).key and self.args == (<Struct>other).args

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.name, self.args))

    def __repr__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(repr, self.args))})"


cdef class Local:
    cdef public Py_ssize_t index
    cdef public str name

    def __init__(self, index, name="_"):
        self.index = index
        self.name = name

    def __eq__(self, other):
        return type(other) is Local and self.index == (<Local>other).index

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("local", self.index))

    def __repr__(self):
        return f"#{self.index}"


cdef class PStruct:
    cdef public str name
    cdef public tuple args
    cdef public object key

    def __init__(self, name, args, key=None):
        self.name = name
        self.args = tuple(args)
        self.key = key if key is not None else functor_key(name, len(self.args))

    def __eq__(self, other):
        if type(other) is not PStruct:
            return False
        return self.key is (<PStruct>other).key and self.args == (<PStruct>other).args

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("p", self.name, self.args))

    def __repr__(self):
        return f"{self.name}({', '.join(map(repr, self.args))})"


cpdef object deref(object t):
    cdef object r
    while type(t) is Var:
        r = (<Var>t).ref
        if r is None:
            return t
        t = r
    return t


cpdef undo(list trail, Py_ssize_t mark):
    cdef Var v
    while len(trail) > mark:
        v = <Var>trail.pop()
        v.ref = None


cdef bint _occurs(Var v, object t):
    cdef object a
    t = deref(t)
    if t is v:
        return True
    if type(t) is Struct:
        for a in (<Struct>t).args:
            if _occurs(v, a):
                return True
    return False


cpdef bint occurs(object v, object t):
    return _occurs(<Var>v, t)


cdef bint _unify(object a, object b, list trail, bint oc) except -1:
    cdef tuple xs, ys
    cdef Py_ssize_t i, n
    a = deref(a)
    b = deref(b)
    if a is b:
        return True
    ta = type(a)
    tb = type(b)
    if ta is Var:
        if oc and tb is Struct and _occurs(<Var>a, b):
            return False
        (<Var>a).ref = b
        trail.append(a)
        return True
    if tb is Var:
        if oc and ta is Struct and _occurs(<Var>b, a):
            return False
        (<Var>b).ref = a
        trail.append(b)
        return True
    if ta is Struct:
        if tb is not Struct or (<Struct>a).key is not (<Struct>b).key:
            return False
        xs = (<Struct>a).args
        ys = (<Struct>b).args
        n = len(xs)
        for i in range(n):
            if not _unify(xs[i], ys[i], trail, oc):
                return False
        return True
    return ta is tb and a == b


cpdef bint unify(object a, object b, list trail, bint occurs_check=True) except -1:
    return _unify(a, b, trail, occurs_check)


cdef object _build(object p, list env):
    cdef object cur
    cdef tuple pargs
    cdef Py_ssize_t i, n
    tp = type(p)
    if tp is Local:
        i = (<Local>p).index
        cur = env[i]
        if cur is None:
            cur = Var((<Local>p).name)
            env[i] = cur
        return cur
    if tp is PStruct:
        pargs = (<PStruct>p).args
        n = len(pargs)
        out = [None] * n
        for i in range(n):
            out[i] = _build(pargs[i], env)
        return Struct((<PStruct>p).name, out, (<PStruct>p).key)
    return p


cpdef object build(object p, list env):
    return _build(p, env)


cdef bint _match(object p, object t, list env, list trail, bint oc) except -1:
    cdef object cur, new
    cdef tuple pargs, targs
    cdef Py_ssize_t i, n
    tp = type(p)
    if tp is Local:
        i = (<Local>p).index
        cur = env[i]
        if cur is None:
            env[i] = t
            return True
        return _unify(cur, t, trail, oc)
    if tp is PStruct:
        t = deref(t)
        tt = type(t)
        if tt is Struct:
            if (<PStruct>p).key is not (<Struct>t).key:
                return False
            pargs = (<PStruct>p).args
            targs = (<Struct>t).args
            n = len(pargs)
            for i in range(n):
                if not _match(pargs[i], targs[i], env, trail, oc):
                    return False
            return True
        if tt is Var:
            new = _build(p, env)
            if oc and _occurs(<Var>t, new):
                return False
            (<Var>t).ref = new
            trail.append(t)
            return True
        return False
    return _unify(p, t, trail, oc)


cpdef bint match(object p, object t, list env, list trail, bint occurs_check=True) except -1:
    return _match(p, t, env, trail, occurs_check)


cpdef bint match_args(tuple pargs, tuple targs, list env, list trail, bint occurs_check=True) except -1:
    cdef Py_ssize_t i, n = len(pargs)
    for i in range(n):
        if not _match(pargs[i], targs[i], env, trail, occurs_check):
            return False
    return True


cpdef bint is_ground(object t):
    cdef object a
    t = deref(t)
    if type(t) is Var:
        return False
    if type(t) is Struct:
        for a in (<Struct>t).args:
            if not is_ground(a):
                return False
    return True


cpdef object resolve(object t):
    t = deref(t)
    if type(t) is Struct and (<Struct>t).args:
        return Struct((<Struct>t).name, [resolve(a) for a in (<Struct>t).args], (<Struct>t).key)
    return t
