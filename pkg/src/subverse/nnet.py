"""From-scratch stacked-GRU language model: forward, BPTT backward, Adam.

Architecture: an embedding lookup (a linear layer applied to one-hot input,
without materializing the one-hots), a stack of GRU layers, and a linear
decoder producing logits over the vocabulary.

Cell equations, per layer:

    z  = sigmoid(x W_z + h U_z + b_z)
    r  = sigmoid(x W_r + h U_r + b_r)
    n  = tanh(x W_n + r * (h U_n + b_n))
    h' = (1 - z) * n + z * h

All arrays follow the dtype of the parameters; training uses float32,
the finite-difference test oracle uses float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericsError


@dataclass(frozen=True)
class ModelConfig:
    vocab_size: int
    hidden_size: int
    n_layers: int
    seed: int = 0
    learning_rate: float = 2e-3
    grad_clip: float = 5.0
    epochs: int = 15

    def __post_init__(self):
        if self.vocab_size < 1:
            raise ValueError("vocab_size must be >= 1")
        if self.hidden_size < 1:
            raise ValueError("hidden_size must be >= 1")
        if self.n_layers < 1:
            raise ValueError("n_layers must be >= 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.grad_clip <= 0:
            raise ValueError("grad_clip must be > 0")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")


@dataclass
class GruLayer:
    w_z: np.ndarray
    w_r: np.ndarray
    w_n: np.ndarray
    u_z: np.ndarray
    u_r: np.ndarray
    u_n: np.ndarray
    b_z: np.ndarray
    b_r: np.ndarray
    b_n: np.ndarray


_LAYER_FIELDS = ("w_z", "w_r", "w_n", "u_z", "u_r", "u_n", "b_z", "b_r", "b_n")


@dataclass
class ModelParams:
    """All weights; also reused as the container for gradients and moments."""

    encoder: np.ndarray
    layers: list[GruLayer]
    decoder_w: np.ndarray
    decoder_b: np.ndarray

    def tensors(self):
        """Yield (name, array) pairs in the canonical serialization order."""
        yield "encoder", self.encoder
        for i, layer in enumerate(self.layers):
            for name in _LAYER_FIELDS:
                yield f"layer{i}.{name}", getattr(layer, name)
        yield "decoder_w", self.decoder_w
        yield "decoder_b", self.decoder_b

    def arrays(self) -> list[np.ndarray]:
        return [a for _, a in self.tensors()]

    def zeros_like(self) -> "ModelParams":
        return ModelParams(
            encoder=np.zeros_like(self.encoder),
            layers=[
                GruLayer(**{f: np.zeros_like(getattr(l, f)) for f in _LAYER_FIELDS})
                for l in self.layers
            ],
            decoder_w=np.zeros_like(self.decoder_w),
            decoder_b=np.zeros_like(self.decoder_b),
        )

    def copy(self) -> "ModelParams":
        return ModelParams(
            encoder=self.encoder.copy(),
            layers=[
                GruLayer(**{f: getattr(l, f).copy() for f in _LAYER_FIELDS})
                for l in self.layers
            ],
            decoder_w=self.decoder_w.copy(),
            decoder_b=self.decoder_b.copy(),
        )

    @property
    def vocab_size(self) -> int:
        return self.encoder.shape[0]

    @property
    def hidden_size(self) -> int:
        return self.encoder.shape[1]

    @property
    def n_layers(self) -> int:
        return len(self.layers)


def init_params(cfg: ModelConfig, dtype=np.float32) -> ModelParams:
    """Uniform weights in [-1/sqrt(H), +1/sqrt(H)], zero biases, per seed."""
    rng = np.random.default_rng(cfg.seed)
    bound = 1.0 / np.sqrt(cfg.hidden_size)
    h, v = cfg.hidden_size, cfg.vocab_size

    def uniform(shape):
        return rng.uniform(-bound, bound, size=shape).astype(dtype)

    encoder = uniform((v, h))
    layers = []
    for _ in range(cfg.n_layers):
        layers.append(GruLayer(
            w_z=uniform((h, h)), w_r=uniform((h, h)), w_n=uniform((h, h)),
            u_z=uniform((h, h)), u_r=uniform((h, h)), u_n=uniform((h, h)),
            b_z=np.zeros(h, dtype), b_r=np.zeros(h, dtype), b_n=np.zeros(h, dtype),
        ))
    return ModelParams(encoder, layers, uniform((h, v)), np.zeros(v, dtype))


def sigmoid(x: np.ndarray) -> np.ndarray:
    # Two-branch form avoids overflow warnings for large |x|.
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def zero_state(params: ModelParams) -> np.ndarray:
    return np.zeros((params.n_layers, params.hidden_size), dtype=params.encoder.dtype)


def gru_cell(x: np.ndarray, h: np.ndarray, layer: GruLayer) -> np.ndarray:
    """One GRU step for one layer; x and h are vectors."""
    if x.shape[-1] != layer.w_z.shape[0] or h.shape[-1] != layer.u_z.shape[0]:
        raise ValueError("gru_cell dimension mismatch")
    z = sigmoid(x @ layer.w_z + h @ layer.u_z + layer.b_z)
    r = sigmoid(x @ layer.w_r + h @ layer.u_r + layer.b_r)
    n = np.tanh(x @ layer.w_n + r * (h @ layer.u_n + layer.b_n))
    return (1.0 - z) * n + z * h


def forward_step(params: ModelParams, token_index: int, state: np.ndarray):
    """Advance one token; returns (logits, new_state).  Never mutates params."""
    if not 0 <= token_index < params.vocab_size:
        raise ValueError(f"token index {token_index} out of range")
    x = params.encoder[token_index]
    new_state = np.empty_like(state)
    for l, layer in enumerate(params.layers):
        x = gru_cell(x, state[l], layer)
        new_state[l] = x
    logits = x @ params.decoder_w + params.decoder_b
    return logits, new_state


def cross_entropy(logits: np.ndarray, target_index: int) -> float:
    """-log softmax(logits)[target], via the log-sum-exp stable form."""
    if not 0 <= target_index < logits.shape[-1]:
        raise ValueError(f"target index {target_index} out of range")
    m = float(np.max(logits))
    lse = m + float(np.log(np.sum(np.exp(logits - m))))
    return lse - float(logits[target_index])


@dataclass
class _LayerCache:
    x_in: np.ndarray   # (T, H) layer input
    h_prev: np.ndarray  # (T, H) state entering each step
    z: np.ndarray
    r: np.ndarray
    n: np.ndarray
    u_pre: np.ndarray  # h_prev @ U_n + b_n
    h_out: np.ndarray


def _forward_chunk(params: ModelParams, inputs: np.ndarray, state0: np.ndarray):
    """Run the whole chunk; returns (logits (T,V), per-layer caches)."""
    t_steps = len(inputs)
    x = params.encoder[inputs]  # (T, H) copy via fancy indexing
    caches = []
    for l, layer in enumerate(params.layers):
        a_z = x @ layer.w_z + layer.b_z
        a_r = x @ layer.w_r + layer.b_r
        a_n = x @ layer.w_n
        h = state0[l]
        shape = (t_steps, params.hidden_size)
        h_prev = np.empty(shape, x.dtype)
        zs = np.empty(shape, x.dtype)
        rs = np.empty(shape, x.dtype)
        ns = np.empty(shape, x.dtype)
        u_pres = np.empty(shape, x.dtype)
        h_out = np.empty(shape, x.dtype)
        for t in range(t_steps):
            h_prev[t] = h
            z = sigmoid(a_z[t] + h @ layer.u_z)
            r = sigmoid(a_r[t] + h @ layer.u_r)
            u_pre = h @ layer.u_n + layer.b_n
            n = np.tanh(a_n[t] + r * u_pre)
            h = (1.0 - z) * n + z * h
            zs[t], rs[t], ns[t], u_pres[t], h_out[t] = z, r, n, u_pre, h
        caches.append(_LayerCache(x, h_prev, zs, rs, ns, u_pres, h_out))
        x = h_out
    logits = x @ params.decoder_w + params.decoder_b
    return logits, caches


def _mean_loss_and_dlogits(logits: np.ndarray, targets: np.ndarray):
    t_steps = len(targets)
    m = logits.max(axis=1, keepdims=True)
    shifted = logits - m
    exp = np.exp(shifted)
    sums = exp.sum(axis=1, keepdims=True)
    log_probs = shifted - np.log(sums)
    rows = np.arange(t_steps)
    loss = float(-log_probs[rows, targets].mean())
    dlogits = exp / sums
    dlogits[rows, targets] -= 1.0
    dlogits /= t_steps
    return loss, dlogits.astype(logits.dtype, copy=False)


def chunk_loss(params: ModelParams, pair, state0: np.ndarray | None = None) -> float:
    """Mean cross-entropy of one chunk; forward only."""
    if state0 is None:
        state0 = zero_state(params)
    logits, _ = _forward_chunk(params, pair.input, state0)
    loss, _ = _mean_loss_and_dlogits(logits, pair.target)
    return loss


def global_grad_norm(grads: ModelParams) -> float:
    return float(np.sqrt(sum(float(np.sum(a.astype(np.float64) ** 2)) for a in grads.arrays())))


def clip_grads_(grads: ModelParams, max_norm: float) -> float:
    """Scale all gradients in place so the global norm is <= max_norm."""
    norm = global_grad_norm(grads)
    if norm > max_norm:
        scale = max_norm / norm
        for a in grads.arrays():
            a *= scale
    return norm


def backward(params: ModelParams, pair, state0: np.ndarray | None = None,
             grad_clip: float | None = None):
    """Full backpropagation through time over one chunk.

    Returns (grads, mean_loss); grads share the ModelParams layout and have
    been global-norm clipped when ``grad_clip`` is given.
    """
    if state0 is None:
        state0 = zero_state(params)
    inputs, targets = pair.input, pair.target
    t_steps = len(inputs)
    logits, caches = _forward_chunk(params, inputs, state0)
    loss, dlogits = _mean_loss_and_dlogits(logits, targets)
    if not np.isfinite(loss):
        raise NumericsError("non-finite loss during backward pass")

    grads = params.zeros_like()
    top = caches[-1].h_out
    grads.decoder_w[...] = top.T @ dlogits
    grads.decoder_b[...] = dlogits.sum(axis=0)
    d_h = dlogits @ params.decoder_w.T  # (T, H) gradient wrt layer outputs

    for l in range(params.n_layers - 1, -1, -1):
        layer = params.layers[l]
        c = caches[l]
        da_z = np.empty_like(c.z)
        da_r = np.empty_like(c.r)
        da_n = np.empty_like(c.n)
        du_pre = np.empty_like(c.u_pre)
        carry = np.zeros(params.hidden_size, dtype=c.z.dtype)
        for t in range(t_steps - 1, -1, -1):
            dh = d_h[t] + carry
            z, r, n = c.z[t], c.r[t], c.n[t]
            h_prev, u_pre = c.h_prev[t], c.u_pre[t]
            da_z[t] = dh * (h_prev - n) * z * (1.0 - z)
            dan = dh * (1.0 - z) * (1.0 - n * n)
            da_n[t] = dan
            da_r[t] = dan * u_pre * r * (1.0 - r)
            du_pre[t] = dan * r
            carry = (dh * z + da_z[t] @ layer.u_z.T
                     + da_r[t] @ layer.u_r.T + du_pre[t] @ layer.u_n.T)
        g = grads.layers[l]
        g.w_z[...] = c.x_in.T @ da_z
        g.w_r[...] = c.x_in.T @ da_r
        g.w_n[...] = c.x_in.T @ da_n
        g.u_z[...] = c.h_prev.T @ da_z
        g.u_r[...] = c.h_prev.T @ da_r
        g.u_n[...] = c.h_prev.T @ du_pre
        g.b_z[...] = da_z.sum(axis=0)
        g.b_r[...] = da_r.sum(axis=0)
        g.b_n[...] = du_pre.sum(axis=0)
        d_h = da_z @ layer.w_z.T + da_r @ layer.w_r.T + da_n @ layer.w_n.T

    np.add.at(grads.encoder, inputs, d_h)
    for _, a in grads.tensors():
        if not np.all(np.isfinite(a)):
            raise NumericsError("non-finite gradient during backward pass")
    if grad_clip is not None:
        clip_grads_(grads, grad_clip)
    return grads, loss


@dataclass
class OptState:
    """Adam first/second moment estimates plus the step counter."""

    step: int
    m: ModelParams
    v: ModelParams

    @staticmethod
    def for_params(params: ModelParams) -> "OptState":
        return OptState(step=0, m=params.zeros_like(), v=params.zeros_like())


ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def adam_step(params: ModelParams, grads: ModelParams, opt: OptState, lr: float):
    """Standard bias-corrected Adam update, in place."""
    opt.step += 1
    t = opt.step
    correction1 = 1.0 - ADAM_BETA1 ** t
    correction2 = 1.0 - ADAM_BETA2 ** t
    for p, g, m, v in zip(params.arrays(), grads.arrays(),
                          opt.m.arrays(), opt.v.arrays()):
        m *= ADAM_BETA1
        m += (1.0 - ADAM_BETA1) * g
        v *= ADAM_BETA2
        v += (1.0 - ADAM_BETA2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        p -= lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
    return params, opt
