"""Byte-level tour of the wire formats.

Every object starts with a 6-byte header: magic "LSG1", an object kind
(0 public key, 1 expanded private key, 2 at-rest private key,
3 signature) and the instance identifier. Circulant blocks are packed
little-endian into 64-bit words: ceil(p/64)*8 bytes per block.
"""

from ledasig import (encode_private_key_at_rest, encode_public_key,
                     encode_signature, expand_private_key, get_instance,
                     keypair_from_seed, public_key_bytes, sign,
                     signature_bytes)

params = get_instance("a3")
sk, pk = keypair_from_seed(bytes(32), params)

pk_blob = encode_public_key(pk)
print("public key")
print(f"  header   : {pk_blob[:6].hex()}  (magic 'LSG1', kind=0, id=0)")
print(f"  payload  : {params.r0} x {params.n0} blocks x "
      f"{params.block_bytes} B = {public_key_bytes(params):,} B")
print(f"  block(0,0) first row of the circulant, little-endian bits:")
print(f"    {pk_blob[6:6 + params.block_bytes].hex()}")

sig = sign(sk, b"demo")
sig_blob = encode_signature(sig, params)
print("\nsignature")
print(f"  header   : {sig_blob[:6].hex()}  (kind=3)")
print(f"  payload  : {params.n0} blocks x {params.block_bytes} B "
      f"+ 8 B salt = {signature_bytes(params):,} B")
print(f"  salt     : {sig_blob[-8:].hex()} "
      f"(little-endian {sig.theta_star})")

sk_blob = encode_private_key_at_rest(sk)
print("\nat-rest private key")
print(f"  header   : {sk_blob[:6].hex()}  (kind=2)")
print(f"  payload  : {params.seed_bytes} B seed + {params.z} columns x "
      f"{(params.r0 + 7) // 8} B of B = {len(sk_blob) - 6} B")
print(f"  seed     : {sk_blob[6:6 + params.seed_bytes].hex()}")
print(f"  B columns: {sk_blob[6 + params.seed_bytes:].hex()}")

sk2, pk2 = expand_private_key(sk_blob)
print(f"\nre-expansion reproduces the keypair bit for bit: "
      f"{sk2 == sk and pk2 == pk}")

print("\nblock packing for all nine instances (payload bytes):")
from ledasig.params import INSTANCES
for name, prm in INSTANCES.items():
    print(f"  {name:7s} p={prm.p:5d} block={prm.block_bytes:4d} B   "
          f"pk={public_key_bytes(prm):>10,} B   "
          f"sig={signature_bytes(prm):>8,} B")
