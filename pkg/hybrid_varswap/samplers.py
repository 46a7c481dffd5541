import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)
_UNIT = 2. ** -53

DRAWS_PER_STEP = 4


def _batchify(l, batch_size):
    for i in range(0, len(l), batch_size):
        yield l[i:i + batch_size]


def splitmix64(z):
    """
    Finalizer of the splitmix64 generator.

    :param z: uint64 numpy array.
    :return: uint64 numpy array of hashed values.
    """

    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over='ignore'):
        z = (z ^ (z >> np.uint64(30))) * _MIX_1
        z = (z ^ (z >> np.uint64(27))) * _MIX_2
    return z ^ (z >> np.uint64(31))


class PathBatchSampler(object):
    """
    Splits path indices 0..n_paths-1 into consecutive batches of a fixed size. The partition depends only on n_paths
    and batch_size.
    """

    def __init__(self, n_paths, batch_size):
        """
        :param n_paths: Number of paths.
        :param batch_size: Paths per batch. The last batch may be smaller.
        """

        super(PathBatchSampler, self).__init__()
        self._n_paths = n_paths
        self._batch_size = batch_size

    def __iter__(self):
        for batch_index, indexes in enumerate(_batchify(range(self._n_paths), self._batch_size)):
            yield batch_index, indexes.start, indexes.stop

    def __len__(self):
        return (self._n_paths + self._batch_size - 1) // self._batch_size


class CounterBasedNormalSampler(object):
    """
    Standard normal draws addressed by (seed, path index, step). Every path owns a splitmix64 stream keyed by a hash of
    the seed and its index, and draw c of that stream is the hash of key + c * golden gamma. Draws are therefore
    reproducible regardless of how paths are grouped or scheduled.
    """

    def __init__(self, seed):
        """
        :param seed: Unsigned 64 bit seed.
        """

        super(CounterBasedNormalSampler, self).__init__()
        self._seed = int(seed)
        self._seed_key = splitmix64(np.array([self._seed], dtype=np.uint64))[0]

    @property
    def seed(self):
        return self._seed

    def path_keys(self, start, stop):
        """
        :return: uint64 numpy array with the stream keys of paths start..stop-1.
        """

        indexes = np.arange(start, stop, dtype=np.uint64)
        with np.errstate(over='ignore'):
            return splitmix64(self._seed_key ^ splitmix64(indexes + GOLDEN_GAMMA))

    def uniforms(self, keys, counter):
        """
        :param keys: uint64 numpy array of path keys.
        :param counter: Draw counter.
        :return: float64 numpy array of uniforms in the open interval (0, 1).
        """

        with np.errstate(over='ignore'):
            bits = splitmix64(keys + np.uint64(counter) * GOLDEN_GAMMA)
        return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * _UNIT

    def normals(self, keys, step):
        """
        Three independent standard normals per path for one Euler step, by Box-Muller on draws 4 * step .. 4 * step + 3.

        :param keys: uint64 numpy array of path keys.
        :param step: Euler step index.
        :return: float64 numpy array of shape (3, len(keys)).
        """

        counter = DRAWS_PER_STEP * step
        u0 = self.uniforms(keys, counter)
        u1 = self.uniforms(keys, counter + 1)
        u2 = self.uniforms(keys, counter + 2)
        u3 = self.uniforms(keys, counter + 3)

        radius_1 = np.sqrt(-2. * np.log(u0))
        radius_2 = np.sqrt(-2. * np.log(u2))
        return np.stack([
            radius_1 * np.cos(2. * np.pi * u1),
            radius_1 * np.sin(2. * np.pi * u1),
            radius_2 * np.cos(2. * np.pi * u3)
        ])
