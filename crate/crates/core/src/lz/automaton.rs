// Online suffix automaton over the binary alphabet.

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct SuffixAutomaton {
    next: Vec<[u32; 2]>,
    link: Vec<u32>,
    len: Vec<u32>,
    last: u32,
}

impl SuffixAutomaton {
    pub(crate) fn with_capacity(text_len: usize) -> Self {
        let cap = 2 * text_len.max(1);
        let mut sam = Self {
            next: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            len: Vec::with_capacity(cap),
            last: 0,
        };
        sam.add_state(0, NONE, [NONE; 2]);
        sam
    }

    fn add_state(&mut self, len: u32, link: u32, next: [u32; 2]) -> u32 {
        self.next.push(next);
        self.link.push(link);
        self.len.push(len);
        (self.next.len() - 1) as u32
    }

    pub(crate) fn push(&mut self, symbol: u8) {
        let c = symbol as usize;
        let cur = self.add_state(self.len[self.last as usize] + 1, NONE, [NONE; 2]);
        let mut p = self.last;
        while p != NONE && self.next[p as usize][c] == NONE {
            self.next[p as usize][c] = cur;
            p = self.link[p as usize];
        }
        if p == NONE {
            self.link[cur as usize] = 0;
        } else {
            let q = self.next[p as usize][c];
            if self.len[p as usize] + 1 == self.len[q as usize] {
                self.link[cur as usize] = q;
            } else {
                let clone = self.add_state(
                    self.len[p as usize] + 1,
                    self.link[q as usize],
                    self.next[q as usize],
                );
                while p != NONE && self.next[p as usize][c] == q {
                    self.next[p as usize][c] = clone;
                    p = self.link[p as usize];
                }
                self.link[q as usize] = clone;
                self.link[cur as usize] = clone;
            }
        }
        self.last = cur;
    }

    /// Length of the longest prefix of `pattern` that is a substring of the
    /// text pushed so far.
    pub(crate) fn longest_prefix_match(&self, pattern: &[u8]) -> usize {
        let mut state = 0u32;
        for (i, &symbol) in pattern.iter().enumerate() {
            let next = self.next[state as usize][symbol as usize];
            if next == NONE {
                return i;
            }
            state = next;
        }
        pattern.len()
    }
}
