"""Pure-Python hot kernels. Signatures mirror ``_ckernels``.

Permutations are plain image tuples and subsets are int bitmasks here;
the public modules wrap them.
"""

from __future__ import annotations


def byte_tables(images):
    """Four 256-entry tables so a mask image is four lookups."""
    tables = []
    for block in range(4):
        base = 8 * block
        row = [0] * 256
        for b in range(256):
            out = 0
            for bit in range(8):
                if b >> bit & 1:
                    p = base + bit
                    if p < len(images):
                        out |= 1 << images[p]
            row[b] = out
        tables.append(tuple(row))
    return tuple(tables)


def mask_image(images, mask):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << images[i]
        mask >>= 1
        i += 1
    return out


def mask_orbit(gens, mask, limit=0):
    """BFS orbit of ``mask`` under the generator image tuples.

    Stops as soon as the orbit reaches ``limit`` elements (0 = no limit).
    """
    tables = [byte_tables(g) for g in gens]
    seen = {mask}
    queue = [mask]
    head = 0
    while head < len(queue):
        m = queue[head]
        head += 1
        b0, b1, b2, b3 = m & 255, (m >> 8) & 255, (m >> 16) & 255, m >> 24
        for t0, t1, t2, t3 in tables:
            y = t0[b0] | t1[b1] | t2[b2] | t3[b3]
            if y not in seen:
                seen.add(y)
                queue.append(y)
                if limit and len(queue) >= limit:
                    return queue
    return queue


def orbit_scan(n, gens):
    """Partition all 2**n masks into orbits.

    Returns ``(reps, sizes)``; each rep is the smallest mask in its orbit
    and reps are ascending.
    """
    tables = [byte_tables(g) for g in gens]
    total = 1 << n
    visited = bytearray(total)
    reps = []
    sizes = []
    for start in range(total):
        if visited[start]:
            continue
        visited[start] = 1
        queue = [start]
        head = 0
        while head < len(queue):
            m = queue[head]
            head += 1
            b0, b1, b2, b3 = m & 255, (m >> 8) & 255, (m >> 16) & 255, m >> 24
            for t0, t1, t2, t3 in tables:
                y = t0[b0] | t1[b1] | t2[b2] | t3[b3]
                if not visited[y]:
                    visited[y] = 1
                    queue.append(y)
        reps.append(start)
        sizes.append(len(queue))
    return reps, sizes


def sym_scan(n, edges, colors=None):
    """All permutations of range(n) mapping each edge to an edge of equal colour.

    Depth-first over image prefixes: once points 0..p have images, every
    edge whose largest point is p is checked. Returns the accepted
    permutations as bytes, n per permutation, in lexicographic order.
    """
    col = {}
    for idx, e in enumerate(edges):
        col[e] = colors[idx] if colors is not None else 0
    by_top = [[] for _ in range(n)]
    for e, c in col.items():
        if e:
            by_top[e.bit_length() - 1].append((e, c))
    out = bytearray()
    perm = [0] * n
    used = [False] * n

    def image(m):
        y = 0
        i = 0
        while m:
            if m & 1:
                y |= 1 << perm[i]
            m >>= 1
            i += 1
        return y

    def dfs(p):
        if p == n:
            out.extend(perm)
            return
        checks = by_top[p]
        for v in range(n):
            if used[v]:
                continue
            perm[p] = v
            ok = True
            for e, c in checks:
                if col.get(image(e), -1) != c:
                    ok = False
                    break
            if ok:
                used[v] = True
                dfs(p + 1)
                used[v] = False

    dfs(0)
    return bytes(out)
