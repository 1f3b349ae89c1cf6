//! Fixed-length bit array indexed by residues mod `n`, with cyclic rotation.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CyclicBits {
    len: usize,
    words: Vec<u64>,
}

impl CyclicBits {
    pub fn new(len: usize) -> Self {
        CyclicBits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn mask_top(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Bits moved towards higher indices by `k`, dropping what falls off the end.
    fn shifted_up(&self, k: usize) -> Vec<u64> {
        let nw = self.words.len();
        let (q, r) = (k / 64, k % 64);
        let mut out = vec![0u64; nw];
        for (src, slot) in out.iter_mut().skip(q).enumerate() {
            let mut v = self.words[src] << r;
            if r > 0 && src > 0 {
                v |= self.words[src - 1] >> (64 - r);
            }
            *slot = v;
        }
        out
    }

    /// Bits moved towards lower indices by `k`.
    fn shifted_down(&self, k: usize) -> Vec<u64> {
        let nw = self.words.len();
        let (q, r) = (k / 64, k % 64);
        let mut out = vec![0u64; nw];
        for (d, slot) in out.iter_mut().enumerate().take(nw.saturating_sub(q)) {
            let src = d + q;
            let mut v = self.words[src] >> r;
            if r > 0 && src + 1 < nw {
                v |= self.words[src + 1] << (64 - r);
            }
            *slot = v;
        }
        out
    }

    /// `self |= self rotated by k`, i.e. `S ∪ (S + k)` in `Z/len`.
    pub fn or_rotated(&mut self, k: usize) {
        let k = k % self.len;
        if k == 0 {
            return;
        }
        let up = self.shifted_up(k);
        let down = self.shifted_down(self.len - k);
        for ((w, u), d) in self.words.iter_mut().zip(up).zip(down) {
            *w |= u | d;
        }
        self.mask_top();
    }
}
