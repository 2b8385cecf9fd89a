import java.io.ByteArrayOutputStream;
import java.io.IOException;
import java.io.OutputStream;
import java.util.ArrayList;
import java.util.List;

/**
 * Serializes an in-memory class model into the JVM class-file format.
 *
 * <p>The layout is fixed: magic, version, constant pool, access flags,
 * this/super indices, then interfaces, fields, methods and attributes.
 */
public class JvmClassWriter {

    static final int MAGIC = 0xCAFEBABE;

    private final int minorVersion;
    private final int majorVersion;
    private final int accessFlags;
    private final int thisClassIndex;
    private final int superClassIndex;
    private final List<byte[]> constantPool = new ArrayList<>();
    private final List<Integer> interfaces = new ArrayList<>();
    private final List<MemberInfo> fields = new ArrayList<>();
    private final List<MemberInfo> methods = new ArrayList<>();
    private final List<AttributeInfo> attributes = new ArrayList<>();

    public JvmClassWriter(int minorVersion, int majorVersion, int accessFlags,
            int thisClassIndex, int superClassIndex) {
        this.minorVersion = minorVersion;
        this.majorVersion = majorVersion;
        this.accessFlags = accessFlags;
        this.thisClassIndex = thisClassIndex;
        this.superClassIndex = superClassIndex;
    }

    /** One entry of the field or method table. */
    public static final class MemberInfo {
        final int accessFlags;
        final int nameIndex;
        final int descriptorIndex;
        final List<AttributeInfo> attributes = new ArrayList<>();

        public MemberInfo(int accessFlags, int nameIndex, int descriptorIndex) {
            this.accessFlags = accessFlags;
            this.nameIndex = nameIndex;
            this.descriptorIndex = descriptorIndex;
        }
    }

    /** A named blob attached to the class, a field, or a method. */
    public static final class AttributeInfo {
        final int nameIndex;
        final byte[] payload;

        public AttributeInfo(int nameIndex, byte[] payload) {
            this.nameIndex = nameIndex;
            this.payload = payload;
        }
    }

    /**
     * Writes the complete class file image and returns it as a byte array.
     */
    public byte[] writeJvmClass() throws IOException {
        ByteArrayOutputStream out = new ByteArrayOutputStream();
        writeU4(out, MAGIC);
        writeU2(out, minorVersion);
        writeU2(out, majorVersion);
        writeU2(out, constantPool.size() + 1);
        for (byte[] entry : constantPool) {
            out.write(entry);
        }
        writeU2(out, accessFlags);
        writeU2(out, thisClassIndex);
        writeU2(out, superClassIndex);
        writeU2(out, interfaces.size());
        for (int interfaceIndex : interfaces) {
            writeU2(out, interfaceIndex);
        }
        writeU2(out, fields.size());
        for (MemberInfo field : fields) {
            writeMember(out, field);
        }
        writeMethods(out);
        writeU2(out, attributes.size());
        for (AttributeInfo attribute : attributes) {
            writeAttribute(out, attribute);
        }
        return out.toByteArray();
    }

    private void writeMethods(ByteArrayOutputStream out) throws IOException {
        writeU2(out, methods.size());
        for (MemberInfo method : methods) {
            writeU2(out, method.accessFlags);
            writeU2(out, method.nameIndex);
            writeMemberBody(out, method);
        }
    }

    private void writeMember(OutputStream out, MemberInfo member) throws IOException {
        writeU2(out, member.accessFlags);
        writeU2(out, member.nameIndex);
        writeMemberBody(out, member);
    }

    private void writeMemberBody(OutputStream out, MemberInfo member) throws IOException {
        writeU2(out, member.descriptorIndex);
        writeU2(out, member.attributes.size());
        for (AttributeInfo attribute : member.attributes) {
            writeAttribute(out, attribute);
        }
    }

    private void writeAttribute(OutputStream out, AttributeInfo attribute) throws IOException {
        writeU2(out, attribute.nameIndex);
        writeU4(out, attribute.payload.length);
        out.write(attribute.payload);
    }

    private void writeU2(OutputStream out, int value) throws IOException {
        out.write((value >>> 8) & 0xff);
        out.write(value & 0xff);
    }

    private void writeU4(OutputStream out, int value) throws IOException {
        out.write((value >>> 24) & 0xff);
        out.write((value >>> 16) & 0xff);
        out.write((value >>> 8) & 0xff);
        out.write(value & 0xff);
    }
}
