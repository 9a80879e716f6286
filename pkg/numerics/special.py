"""
정규분포 관련 특수함수
표준정규 CDF/분위수는 scipy.special, 이변량 정규 CDF는 Genz(Drezner-Wesolowsky) 구적 공식
"""

import math
from typing import Tuple

import numpy as np
from scipy import special

# 밀도 평가 시 좌표를 이 구간으로 자른다 (아르키메데스 밀도는 모서리에서 발산)
UNIT_BAND: Tuple[float, float] = (1e-12, 1.0 - 1e-12)

_TWO_PI = 2.0 * math.pi

# Gauss-Legendre 노드/가중치 (음의 절반만, 3/6/10점)
_GL_X = (
    np.array([-0.9324695142031522, -0.6612093864662647, -0.2386191860831970]),
    np.array([-0.9815606342467191, -0.9041172563704750, -0.7699026741943050,
              -0.5873179542866171, -0.3678314989981802, -0.1252334085114692]),
    np.array([-0.9931285991850949, -0.9639719272779138, -0.9122344282513259,
              -0.8391169718222188, -0.7463319064601508, -0.6360536807265150,
              -0.5108670019508271, -0.3737060887154196, -0.2277858511416451,
              -0.07652652113349733]),
)
_GL_W = (
    np.array([0.1713244923791705, 0.3607615730481384, 0.4679139345726904]),
    np.array([0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
              0.2031674267230659, 0.2334925365383547, 0.2491470458134029]),
    np.array([0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
              0.08327674157670475, 0.1019301198172404, 0.1181945319615184,
              0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
              0.1527533871307259]),
)


def norm_cdf(x):
    """표준정규 CDF Φ"""
    return special.ndtr(x)


def norm_ppf(p):
    """표준정규 분위수 Φ⁻¹ (p=0 → -inf, p=1 → +inf)"""
    return special.ndtri(p)


def norm_pdf(x):
    """표준정규 밀도 φ"""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / math.sqrt(_TWO_PI)


def clamp_unit(u):
    """좌표를 (1e-12, 1-1e-12) 밴드로 자릅니다."""
    return np.clip(u, UNIT_BAND[0], UNIT_BAND[1])


def bvn_cdf(sh, sk, r: float) -> np.ndarray:
    """
    이변량 표준정규 CDF P[X ≤ sh, Y ≤ sk], corr(X, Y) = r.

    Genz의 bvnu 알고리즘을 numpy 벡터 연산으로 옮긴 것 (절대오차 ~1e-15).
    sh, sk 는 같은 shape 으로 broadcast 되며 ±inf 를 허용합니다. r 은 스칼라.
    """
    sh, sk = np.broadcast_arrays(np.asarray(sh, dtype=float), np.asarray(sk, dtype=float))
    out = np.empty(sh.shape, dtype=float)
    r = float(r)

    neg_inf = (sh == -np.inf) | (sk == -np.inf)
    h_inf = (sh == np.inf) & ~neg_inf
    k_inf = (sk == np.inf) & ~neg_inf & ~h_inf
    finite = ~(neg_inf | h_inf | k_inf)

    out[neg_inf] = 0.0
    out[h_inf] = norm_cdf(sk[h_inf])
    out[k_inf] = norm_cdf(sh[k_inf])
    if np.any(finite):
        out[finite] = _bvn_finite(sh[finite], sk[finite], r)
    return np.clip(out, 0.0, 1.0)


def _bvn_finite(sh: np.ndarray, sk: np.ndarray, r: float) -> np.ndarray:
    if abs(r) < 0.3:
        ng = 0
    elif abs(r) < 0.75:
        ng = 1
    else:
        ng = 2
    xs_nodes, ws = _GL_X[ng], _GL_W[ng]

    h = -sh
    k = -sk
    hk = h * k

    if abs(r) < 0.925:
        hs = (h * h + k * k) / 2.0
        asr = math.asin(r)
        bvn = np.zeros_like(h)
        for x, w in zip(xs_nodes, ws):
            sn = math.sin(asr * (x + 1.0) / 2.0)
            bvn += w * np.exp((sn * hk - hs) / (1.0 - sn * sn))
            sn = math.sin(asr * (-x + 1.0) / 2.0)
            bvn += w * np.exp((sn * hk - hs) / (1.0 - sn * sn))
        return bvn * asr / (2.0 * _TWO_PI) + norm_cdf(-h) * norm_cdf(-k)

    if r < 0:
        k = -k
        hk = -hk
    bvn = np.zeros_like(h)
    if abs(r) < 1.0:
        as_ = (1.0 - r) * (1.0 + r)
        a = math.sqrt(as_)
        bs = (h - k) ** 2
        c = (4.0 - hk) / 8.0
        d = (12.0 - hk) / 16.0
        bvn = a * np.exp(-(bs / as_ + hk) / 2.0) * (
            1.0 - c * (bs - as_) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as_ * as_ / 5.0
        )
        mask = hk > -160.0
        if np.any(mask):
            b = np.sqrt(bs[mask])
            hkm, cm, dm, bsm = hk[mask], c[mask], d[mask], bs[mask]
            bvn[mask] -= (
                np.exp(-hkm / 2.0) * math.sqrt(_TWO_PI) * norm_cdf(-b / a) * b
                * (1.0 - cm * bsm * (1.0 - dm * bsm / 5.0) / 3.0)
            )
        a_half = a / 2.0
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            for x, w in zip(xs_nodes, ws):
                xs = (a_half * (x + 1.0)) ** 2
                rs = math.sqrt(1.0 - xs)
                bvn += a_half * w * (
                    np.exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs
                    - np.exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs))
                )
                xs = as_ * (-x + 1.0) ** 2 / 4.0
                rs = math.sqrt(1.0 - xs)
                bvn += a_half * w * np.exp(-(bs / xs + hk) / 2.0) * (
                    np.exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs
                    - (1.0 + c * xs * (1.0 + d * xs))
                )
        bvn = -bvn / _TWO_PI
    if r > 0:
        bvn = bvn + norm_cdf(-np.maximum(h, k))
    else:
        bvn = -bvn + np.maximum(0.0, norm_cdf(-h) - norm_cdf(-k))
    return bvn
