/** Incremental CRC-32C (Castagnoli) over byte blocks, table-driven. */
public class ChecksumStream {

    private static final int POLYNOMIAL = 0x82F63B78;
    private static final int[] TABLE = buildTable();

    private int state = 0xFFFFFFFF;

    static int[] buildTable() {
        int[] table = new int[256];
        for (int n = 0; n < 256; n++) {
            int crc = n;
            for (int bit = 0; bit < 8; bit++) {
                if ((crc & 1) != 0) {
                    crc = (crc >>> 1) ^ POLYNOMIAL;
                } else {
                    crc = crc >>> 1;
                }
            }
            table[n] = crc;
        }
        return table;
    }

    /** Folds one block into the running checksum and returns the running value. */
    public int digestBlock(byte[] block, int offset, int length) {
        int crc = state;
        int end = offset + length;
        if (offset < 0 || length < 0 || end > block.length) {
            throw new IndexOutOfBoundsException(offset + "+" + length + " of " + block.length);
        }
        for (int i = offset; i < end; i++) {
            int index = (crc ^ block[i]) & 0xff;
            crc = (crc >>> 8) ^ TABLE[index];
        }
        state = crc;
        return crc ^ 0xFFFFFFFF;
    }

    public void reset() {
        state = 0xFFFFFFFF;
    }
}
