"""Binary SHA-256 Merkle trees over byte-string leaves.

Leaves are hashed as H(0x00 || leaf), inner nodes as H(0x01 || left || right);
a level with an odd number of nodes pairs its last node with itself.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

LEAF_TAG = b"\x00"
NODE_TAG = b"\x01"
DIGEST_LEN = 32


class EmptyLeaves(ValueError):
    pass


def hash_leaf(leaf: bytes) -> bytes:
    return hashlib.sha256(LEAF_TAG + leaf).digest()


def hash_node(left: bytes, right: bytes) -> bytes:
    return hashlib.sha256(NODE_TAG + left + right).digest()


@dataclass
class MerkleCommitment:
    levels: list[list[bytes]]  # levels[0] = hashed leaves, levels[-1] = [root]

    @property
    def root(self) -> bytes:
        return self.levels[-1][0]

    @property
    def leaf_count(self) -> int:
        return len(self.levels[0])

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def path(self, index: int) -> list[bytes]:
        if not 0 <= index < self.leaf_count:
            raise IndexError(f"leaf {index} out of range")
        out = []
        for level in self.levels[:-1]:
            sib = index ^ 1
            out.append(level[sib] if sib < len(level) else level[index])
            index //= 2
        return out


def merkle_commit(leaves: list[bytes]) -> MerkleCommitment:
    if not leaves:
        raise EmptyLeaves("cannot commit to an empty leaf list")
    level = [hash_leaf(x) for x in leaves]
    levels = [level]
    while len(level) > 1:
        if len(level) % 2:
            level = level + [level[-1]]
        level = [hash_node(level[i], level[i + 1]) for i in range(0, len(level), 2)]
        levels.append(level)
    return MerkleCommitment(levels)


def merkle_root(leaves: list[bytes]) -> bytes:
    return merkle_commit(leaves).root


def tree_depth(leaf_count: int) -> int:
    return max(0, (leaf_count - 1).bit_length())


def verify_path(root: bytes, leaf_count: int, index: int, leaf: bytes, path: list[bytes]) -> bool:
    if not 0 <= index < leaf_count or len(path) != tree_depth(leaf_count):
        return False
    node = hash_leaf(leaf)
    width = leaf_count
    for sib in path:
        if index % 2 == 0 and index == width - 1:
            # odd tail: the node was paired with itself
            if sib != node:
                return False
            node = hash_node(node, node)
        elif index % 2 == 0:
            node = hash_node(node, sib)
        else:
            node = hash_node(sib, node)
        index //= 2
        width = (width + 1) // 2
    return node == root
